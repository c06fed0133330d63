#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gtsp/commands.hpp"
#include "gtsp/errors.hpp"

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace gtsp;

  CLI::App app{"Vertex and edge reduction for generalized TSP instances"};
  app.require_subcommand(1);

  // reduce
  ReduceArgs reduce;
  std::string reduce_mode = "combined";
  bool reduce_parallel = false;
  auto* r = app.add_subcommand("reduce", "Remove redundant vertices and edges from a GTSP file");
  r->add_option("input", reduce.input, "GTSP file")->required();
  r->add_option("--mode", reduce_mode, "vertex, edge or combined")
      ->check(CLI::IsMember({"vertex", "edge", "combined"}));
  r->add_option("-o,--output", reduce.output, "Reduced GTSP file")->required();
  r->add_option("--report", reduce.report, "JSON report (default <output>.report.json)");
  r->add_option("--sentinel", reduce.sentinel, "Value written for removed edges");
  r->add_flag("--strict", reduce.strict, "Fail when the instance has fewer than 3 clusters");
  r->add_flag("--parallel", reduce_parallel, "Use the OpenMP kernels");

  // gen
  GenArgs gen;
  std::string gen_clusters = "auto";
  std::string gen_rule = "centroid";
  auto* g = app.add_subcommand("gen", "Cluster a TSPLIB TSP file into a GTSP instance");
  g->add_option("input", gen.input, "TSPLIB file")->required();
  g->add_option("--clusters", gen_clusters, "Cluster count or 'auto' for ceil(n/5)");
  g->add_option("--seed-rule", gen_rule, "First center: centroid, distance-sum or first")
      ->check(CLI::IsMember({"centroid", "distance-sum", "first"}));
  g->add_option("-o,--output", gen.output, "Output file (default <m><name>.gtsp)");

  // verify
  VerifyConfig verify;
  std::string seeds = "1..200";
  std::string fault;
  auto* v = app.add_subcommand("verify", "Check the reductions against brute force and exact solving");
  v->add_option("--seeds", seeds, "Inclusive seed range a..b");
  v->add_option("--min-n", verify.min_n);
  v->add_option("--max-n", verify.max_n);
  v->add_option("--min-m", verify.min_m);
  v->add_option("--max-m", verify.max_m);
  v->add_option("--max-weight", verify.max_weight);
  v->add_option("--inject-fault", fault)->group("")->check(CLI::IsMember({"skip-cluster-guard"}));

  // bench
  BenchArgs bench;
  std::string bench_modes = "vertex,edge,combined";
  std::vector<std::size_t> ladder;
  auto* b = app.add_subcommand("bench", "Reduce every instance in a directory and time it");
  b->add_option("directory", bench.directory, "Directory of .gtsp files");
  b->add_option("--ladder", ladder, "Generated planar sizes instead of (or besides) a directory")
      ->delimiter(',');
  b->add_option("--ladder-seed", bench.ladder_seed);
  b->add_option("--modes", bench_modes, "Comma-separated modes");
  b->add_option("--csv", bench.csv, "CSV output (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (r->parsed()) {
      reduce.mode = *parse_mode(reduce_mode);
      reduce.execution = reduce_parallel ? Execution::parallel : Execution::serial;
      return cmd_reduce(reduce, std::cout, std::cerr);
    }
    if (g->parsed()) {
      if (gen_clusters != "auto") {
        std::size_t used = 0;
        gen.clusters = std::stoul(gen_clusters, &used);
        if (used != gen_clusters.size()) throw std::invalid_argument(gen_clusters);
      }
      gen.seed_rule = gen_rule == "first"          ? CenterSeedRule::lowest_index
                      : gen_rule == "distance-sum" ? CenterSeedRule::max_distance_sum
                                                   : CenterSeedRule::farthest_from_centroid;
      return cmd_gen(gen, std::cout, std::cerr);
    }
    if (v->parsed()) {
      std::tie(verify.seed_first, verify.seed_last) = parse_seed_range(seeds);
      verify.fault_skip_cluster_guard = fault == "skip-cluster-guard";
      return cmd_verify(verify, std::cout, std::cerr);
    }
    if (b->parsed()) {
      bench.modes.clear();
      for (const auto& m : split_list(bench_modes)) {
        const auto mode = parse_mode(m);
        if (!mode) {
          std::cerr << "bench: unknown mode '" << m << "'\n";
          return kExitContract;
        }
        bench.modes.push_back(*mode);
      }
      bench.ladder = ladder;
      bench.threads = bench_threads_from_env();
      return cmd_bench(bench, std::cout, std::cerr);
    }
  } catch (const ContractViolation& e) {
    std::cerr << e.what() << "\n";
    return kExitContract;
  } catch (const std::logic_error&) {
    std::cerr << "--clusters expects an integer or 'auto'\n";
    return kExitContract;
  }
  return kExitFailure;
}
