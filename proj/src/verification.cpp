#include "gtsp/verification.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "gtsp/edge_reduction.hpp"
#include "gtsp/report.hpp"
#include "gtsp/vertex_reduction.hpp"

namespace gtsp {

namespace {

std::size_t draw_in(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  const std::uint64_t span = hi - lo + 1;
  return lo + static_cast<std::size_t>(rng() % span);
}

std::string ids(const std::vector<VertexId>& v) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << ']';
  return out.str();
}

std::string weight_or_none(const std::optional<Tour>& t) {
  return t ? t->weight.to_string() : std::string("infeasible");
}

}  // namespace

GtspInstance verification_instance(std::uint64_t seed, const VerifyConfig& config) {
  // Sizes come from a stream separate from the instance content.
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const std::size_t m = draw_in(rng, config.min_m, config.max_m);
  const std::size_t n = draw_in(rng, std::max(config.min_n, m), std::max(config.max_n, m));
  const RandomMode mode = seed % 2 == 1 ? RandomMode::uniform : RandomMode::planar;
  return random_instance(seed, n, m, config.max_weight, mode);
}

std::uint64_t check_vertex_oracle(const GtspInstance& instance, std::vector<std::string>& problems) {
  if (instance.m() < 3) return 0;
  GtspInstance state = instance;
  IdMap map(state.n());
  std::uint64_t checks = 0;
  for (;;) {
    std::optional<VertexId> first_redundant;
    for (VertexId r = 0; r < static_cast<VertexId>(state.n()); ++r) {
      if (state.cluster_size(state.cluster_of(r)) < 2) continue;
      const bool brute = brute_vertex_redundant(state, r);
      const bool fast = is_vertex_redundant(state, r).redundant;
      const bool no_exit = is_vertex_redundant(state, r, {.early_exit = false}).redundant;
      ++checks;
      if (brute != fast || brute != no_exit) {
        std::ostringstream msg;
        msg << "vertex " << map.original_of(r) << " (removed so far " << state.n() << "/"
            << instance.n() << " left): brute=" << brute << " fast=" << fast
            << " no_early_exit=" << no_exit;
        problems.push_back(msg.str());
        return checks;
      }
      if (brute && !first_redundant) first_redundant = r;
    }
    if (!first_redundant) break;
    remove_vertex(state, *first_redundant, map);
  }
  return checks;
}

std::uint64_t check_edge_oracle(const GtspInstance& instance, std::vector<std::string>& problems,
                                bool fault_skip_cluster_guard) {
  if (instance.m() < 3) return 0;
  GtspInstance state = instance;
  std::uint64_t checks = 0;
  const EdgeScanOptions fast{.skip_foreign_cluster_guard = fault_skip_cluster_guard};
  const EdgeScanOptions unsorted{.sorted_scan = false};
  const EdgeScanOptions parallel{.execution = Execution::parallel};

  for (ClusterId c = 0; c < static_cast<ClusterId>(state.m()); ++c) {
    if (state.cluster_size(c) < 2) continue;
    const std::vector<VertexId> anchors(state.cluster(c).begin(), state.cluster(c).end());
    for (VertexId v : anchors) {
      std::vector<VertexId> brute;
      for (VertexId u = 0; u < static_cast<VertexId>(state.n()); ++u) {
        if (state.cluster_of(u) == c || state.dist(u, v).is_infinite()) continue;
        ++checks;
        if (brute_edge_redundant(state, u, v)) brute.push_back(u);
      }
      const auto got = redundant_edges_for_anchor(state, v, fast);
      const auto got_unsorted = redundant_edges_for_anchor(state, v, unsorted);
      const auto got_parallel = redundant_edges_for_anchor(state, v, parallel);
      if (got != brute || got_unsorted != brute || got_parallel != brute) {
        problems.push_back("anchor " + std::to_string(v) + ": brute=" + ids(brute) +
                           " sorted=" + ids(got) + " unsorted=" + ids(got_unsorted) +
                           " parallel=" + ids(got_parallel));
        return checks;
      }
      for (VertexId u : brute) set_edge_infinite(state, u, v);
    }
  }
  return checks;
}

std::uint64_t check_optimum(const GtspInstance& instance, std::vector<std::string>& problems) {
  const auto before = exact_solve(instance);
  std::uint64_t checks = 0;
  for (Mode mode : {Mode::vertex, Mode::edge, Mode::combined}) {
    GtspInstance reduced = instance;
    IdMap map(reduced.n());
    run_reduction(reduced, map, mode);
    const auto after = exact_solve(reduced);
    ++checks;
    const bool same = before.has_value() == after.has_value() &&
                      (!before || before->weight == after->weight);
    if (!same) {
      problems.push_back(std::string(to_string(mode)) + ": optimum " + weight_or_none(before) +
                         " became " + weight_or_none(after));
    }
  }
  return checks;
}

VerifyResult run_verification(const VerifyConfig& config) {
  VerifyResult result;
  for (std::uint64_t seed = config.seed_first;
       config.seed_last >= config.seed_first && seed <= config.seed_last; ++seed) {
    const GtspInstance instance = verification_instance(seed, config);
    auto run = [&](const char* name, SuiteCounts& counts, auto&& check) {
      std::vector<std::string> problems;
      ++counts.instances;
      counts.checks += check(problems);
      if (!problems.empty()) {
        ++counts.failures;
        for (auto& p : problems) result.failures.push_back({name, seed, std::move(p)});
      }
    };
    if (config.vertex_oracle) {
      run("vertex-oracle", result.vertex, [&](auto& p) { return check_vertex_oracle(instance, p); });
    }
    if (config.edge_oracle) {
      run("edge-oracle", result.edge, [&](auto& p) {
        return check_edge_oracle(instance, p, config.fault_skip_cluster_guard);
      });
    }
    if (config.optimum) {
      run("optimum", result.optimum, [&](auto& p) { return check_optimum(instance, p); });
    }
    if (seed == config.seed_last) break;  // guards against wrap at uint64 max
  }
  return result;
}

std::string repro_command(std::uint64_t seed, const VerifyConfig& config) {
  std::ostringstream out;
  out << "gtsp_reduce verify --seeds " << seed << ".." << seed << " --min-n " << config.min_n
      << " --max-n " << config.max_n << " --min-m " << config.min_m << " --max-m " << config.max_m
      << " --max-weight " << config.max_weight;
  if (config.fault_skip_cluster_guard) out << " --inject-fault skip-cluster-guard";
  return out.str();
}

}  // namespace gtsp
