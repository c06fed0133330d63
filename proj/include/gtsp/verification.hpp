#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gtsp/instance.hpp"
#include "gtsp/oracle.hpp"

namespace gtsp {

struct VerifyConfig {
  std::uint64_t seed_first = 1;
  std::uint64_t seed_last = 200;  // inclusive; seed_last < seed_first is an empty range
  std::size_t min_n = 9;
  std::size_t max_n = 30;
  std::size_t min_m = 3;
  std::size_t max_m = 8;
  std::int64_t max_weight = 100;

  bool vertex_oracle = true;
  bool edge_oracle = true;
  bool optimum = true;

  /// Mutation testing: drop the x-not-in-U guard in the fast edge test.
  bool fault_skip_cluster_guard = false;
};

/// The instance verify uses for `seed`: n and m drawn from the configured
/// ranges, odd seeds uniform weights, even seeds planar points.
GtspInstance verification_instance(std::uint64_t seed, const VerifyConfig& config);

struct VerifyFailure {
  std::string suite;
  std::uint64_t seed = 0;
  std::string detail;
};

struct SuiteCounts {
  std::uint64_t instances = 0;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
};

struct VerifyResult {
  SuiteCounts vertex;
  SuiteCounts edge;
  SuiteCounts optimum;
  std::vector<VerifyFailure> failures;

  bool ok() const { return failures.empty(); }
};

/// Fast vs brute vertex test on every eligible vertex of every state the
/// reduction passes through (one redundant vertex removed per step).
std::uint64_t check_vertex_oracle(const GtspInstance& instance, std::vector<std::string>& problems);

/// Per-anchor fast edge marks vs brute force on the frozen pre-anchor
/// state, also comparing the unsorted and parallel scans.
std::uint64_t check_edge_oracle(const GtspInstance& instance, std::vector<std::string>& problems,
                                bool fault_skip_cluster_guard = false);

/// exact_solve before and after vertex, edge and combined reduction.
std::uint64_t check_optimum(const GtspInstance& instance, std::vector<std::string>& problems);

VerifyResult run_verification(const VerifyConfig& config);

/// Command line that re-runs verify on a single seed.
std::string repro_command(std::uint64_t seed, const VerifyConfig& config);

}  // namespace gtsp
