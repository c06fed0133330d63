#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gtsp/execution.hpp"
#include "gtsp/generator.hpp"
#include "gtsp/report.hpp"
#include "gtsp/verification.hpp"

namespace gtsp {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitParseError = 2;
inline constexpr int kExitContract = 3;

struct ReduceArgs {
  std::filesystem::path input;
  std::filesystem::path output;
  std::filesystem::path report;  // empty: <output>.report.json
  Mode mode = Mode::combined;
  std::optional<std::int64_t> sentinel;
  bool strict = false;
  Execution execution = Execution::serial;
};

/// Writes the reduced instance, <output>.idmap.json and the JSON report.
int cmd_reduce(const ReduceArgs& args, std::ostream& out, std::ostream& err);

struct GenArgs {
  std::filesystem::path input;
  std::filesystem::path output;  // empty: <instance name>.gtsp in the working directory
  std::optional<std::size_t> clusters;
  CenterSeedRule seed_rule = CenterSeedRule::farthest_from_centroid;
};

int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err);

int cmd_verify(const VerifyConfig& config, std::ostream& out, std::ostream& err);

struct BenchArgs {
  std::filesystem::path directory;    // *.gtsp files, processed in name order
  std::vector<std::size_t> ladder;    // generated clustered planar sizes, m = n/5
  std::uint64_t ladder_seed = 1;
  std::vector<Mode> modes{Mode::vertex, Mode::edge, Mode::combined};
  std::filesystem::path csv;          // empty: stdout
  int threads = 1;                    // instances processed concurrently
};

struct BenchRow {
  std::string instance;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::optional<ReductionReport> vertex, edge, combined;
};

struct BenchSummary {
  std::vector<BenchRow> rows;
  std::optional<double> vertex_slope;
  std::optional<double> edge_slope;
};

/// Least-squares slope of log(time) against log(n); needs two distinct n.
std::optional<double> loglog_slope(const std::vector<std::pair<double, double>>& n_time);

std::string bench_csv(const BenchSummary& summary);

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err);

/// Parses "a..b" (inclusive). "b..a" with b > a is the empty range.
std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text);

/// Cap from GTSP_REDUCE_THREADS, or 1 when unset or invalid.
int bench_threads_from_env();

}  // namespace gtsp
