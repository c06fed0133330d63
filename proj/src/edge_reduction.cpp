#include "gtsp/edge_reduction.hpp"

#include <algorithm>
#include <chrono>
#include <string>

#include "gtsp/errors.hpp"

namespace gtsp {

namespace {

void require_anchor(const GtspInstance& instance, VertexId v) {
  if (v < 0 || static_cast<std::size_t>(v) >= instance.n()) {
    throw ContractViolation("edge reduction: vertex " + std::to_string(v) + " out of range");
  }
  if (instance.m() < 3) {
    throw ContractViolation("edge reduction: needs at least 3 clusters");
  }
  if (instance.cluster_size(instance.cluster_of(v)) < 2) {
    throw ContractViolation("edge reduction: vertex " + std::to_string(v) +
                            " is alone in its cluster");
  }
}

/// Everything the per-u test needs, computed once per anchor.
struct AnchorContext {
  const GtspInstance& instance;
  EdgeScanState state;
  std::vector<VertexId> others;  // C \ {anchor, pivot}
  std::vector<VertexId> mates;   // C \ {anchor}
  ClusterId home;
};

AnchorContext make_context(const GtspInstance& instance, VertexId anchor) {
  AnchorContext ctx{instance, build_edge_scan_state(instance, anchor), {}, {},
                    instance.cluster_of(anchor)};
  for (VertexId w : instance.cluster(ctx.home)) {
    if (w == anchor) continue;
    ctx.mates.push_back(w);
    if (w != ctx.state.pivot) ctx.others.push_back(w);
  }
  return ctx;
}

bool sorted_test(const AnchorContext& ctx, VertexId u, const EdgeScanOptions& options,
                 std::vector<Delta>& du) {
  const auto& in = ctx.instance;
  const VertexId v = ctx.state.anchor;
  const ClusterId cu = in.cluster_of(u);
  const auto row_u = in.weights().row(u);
  const Weight uv = row_u[static_cast<std::size_t>(v)];
  const Delta delta_u = delta_of(uv, row_u[static_cast<std::size_t>(ctx.state.pivot)]);

  du.resize(ctx.others.size());
  for (std::size_t k = 0; k < ctx.others.size(); ++k) {
    du[k] = delta_of(uv, row_u[static_cast<std::size_t>(ctx.others[k])]);
  }

  for (const PEntry& p : ctx.state.p_entries) {
    if (p.delta + delta_u >= 0) break;
    if (p.cluster == cu && !options.skip_foreign_cluster_guard) continue;
    const auto row_x = in.weights().row(p.x);
    const Weight xv = row_x[static_cast<std::size_t>(v)];
    bool covered = false;
    for (std::size_t k = 0; k < ctx.others.size(); ++k) {
      if (delta_of(xv, row_x[static_cast<std::size_t>(ctx.others[k])]) + du[k] >= 0) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

bool unsorted_test(const AnchorContext& ctx, VertexId u, const EdgeScanOptions& options) {
  const auto& in = ctx.instance;
  const VertexId v = ctx.state.anchor;
  const ClusterId cu = in.cluster_of(u);
  const auto row_u = in.weights().row(u);
  const Weight uv = row_u[static_cast<std::size_t>(v)];
  for (VertexId x = 0; x < static_cast<VertexId>(in.n()); ++x) {
    const ClusterId cx = in.cluster_of(x);
    if (cx == ctx.home) continue;
    if (cx == cu && !options.skip_foreign_cluster_guard) continue;
    const auto row_x = in.weights().row(x);
    const Weight xv = row_x[static_cast<std::size_t>(v)];
    bool covered = false;
    for (VertexId w : ctx.mates) {
      if (delta_of(xv, row_x[static_cast<std::size_t>(w)]) +
              delta_of(uv, row_u[static_cast<std::size_t>(w)]) >= 0) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

}  // namespace

EdgeScanState build_edge_scan_state(const GtspInstance& instance, VertexId anchor) {
  require_anchor(instance, anchor);
  const ClusterId home = instance.cluster_of(anchor);
  EdgeScanState state;
  state.anchor = anchor;
  for (VertexId w : instance.cluster(home)) {
    if (w != anchor) {
      state.pivot = w;
      break;
    }
  }
  state.p_entries.reserve(instance.n() - instance.cluster_size(home));
  for (VertexId x = 0; x < static_cast<VertexId>(instance.n()); ++x) {
    const ClusterId cx = instance.cluster_of(x);
    if (cx == home) continue;
    const auto row_x = instance.weights().row(x);
    state.p_entries.push_back({delta_of(row_x[static_cast<std::size_t>(anchor)],
                                        row_x[static_cast<std::size_t>(state.pivot)]),
                               x, cx});
  }
  std::sort(state.p_entries.begin(), state.p_entries.end(),
            [](const PEntry& a, const PEntry& b) {
              return a.delta != b.delta ? a.delta < b.delta : a.x < b.x;
            });
  return state;
}

std::vector<VertexId> redundant_edges_for_anchor(const GtspInstance& instance, VertexId anchor,
                                                 const EdgeScanOptions& options) {
  const AnchorContext ctx = make_context(instance, anchor);

  std::vector<VertexId> candidates;
  for (VertexId u = 0; u < static_cast<VertexId>(instance.n()); ++u) {
    if (instance.cluster_of(u) != ctx.home && instance.dist(u, anchor).is_finite()) {
      candidates.push_back(u);
    }
  }

  std::vector<char> redundant(candidates.size(), 0);
  const auto count = static_cast<std::int64_t>(candidates.size());
  if (options.execution == Execution::parallel) {
#pragma omp parallel
    {
      std::vector<Delta> scratch;
#pragma omp for schedule(dynamic, 32)
      for (std::int64_t i = 0; i < count; ++i) {
        const auto k = static_cast<std::size_t>(i);
        redundant[k] = options.sorted_scan ? sorted_test(ctx, candidates[k], options, scratch)
                                           : unsorted_test(ctx, candidates[k], options);
      }
    }
  } else {
    std::vector<Delta> scratch;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      redundant[k] = options.sorted_scan ? sorted_test(ctx, candidates[k], options, scratch)
                                         : unsorted_test(ctx, candidates[k], options);
    }
  }

  std::vector<VertexId> out;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (redundant[k]) out.push_back(candidates[k]);
  }
  return out;
}

std::vector<Edge> reduce_edges_for_anchor(GtspInstance& instance, VertexId anchor,
                                          const EdgeScanOptions& options) {
  std::vector<Edge> marked;
  for (VertexId u : redundant_edges_for_anchor(instance, anchor, options)) {
    instance.set_edge_infinite(u, anchor);
    marked.emplace_back(u, anchor);
  }
  return marked;
}

StripResult strip_isolated_vertices(GtspInstance& instance, IdMap& map) {
  StripResult result;
  if (instance.m() < 3) return result;

  const std::size_t n = instance.n();
  const std::size_t m = instance.m();
  // edges[v * m + c]: finite edges from v into cluster c; reach[v]: clusters
  // other than v's own with at least one such edge.
  std::vector<std::uint32_t> edges(n * m, 0);
  std::vector<std::uint32_t> reach(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    const auto row = instance.weights().row(static_cast<VertexId>(v));
    const ClusterId own = instance.cluster_of(static_cast<VertexId>(v));
    for (std::size_t w = 0; w < n; ++w) {
      const ClusterId cw = instance.cluster_of(static_cast<VertexId>(w));
      if (cw == own || row[w].is_infinite()) continue;
      if (edges[v * m + static_cast<std::size_t>(cw)]++ == 0) ++reach[v];
    }
  }

  std::vector<bool> alive(n, true);
  std::vector<bool> flagged(n, false);
  std::vector<std::size_t> alive_in_cluster(m);
  for (std::size_t c = 0; c < m; ++c) alive_in_cluster[c] = instance.cluster_size(static_cast<ClusterId>(c));
  std::vector<VertexId> doomed;

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (!alive[v] || reach[v] > 1) continue;
      const ClusterId own = instance.cluster_of(static_cast<VertexId>(v));
      if (alive_in_cluster[static_cast<std::size_t>(own)] < 2) {
        if (!flagged[v]) {
          flagged[v] = true;
          result.infeasible.push_back(map.original_of(static_cast<VertexId>(v)));
        }
        continue;
      }
      alive[v] = false;
      --alive_in_cluster[static_cast<std::size_t>(own)];
      doomed.push_back(static_cast<VertexId>(v));
      result.removed.push_back(map.original_of(static_cast<VertexId>(v)));
      changed = true;
      const auto row = instance.weights().row(static_cast<VertexId>(v));
      for (std::size_t w = 0; w < n; ++w) {
        if (!alive[w] || row[w].is_infinite()) continue;
        if (instance.cluster_of(static_cast<VertexId>(w)) == own) continue;
        if (--edges[w * m + static_cast<std::size_t>(own)] == 0) --reach[w];
      }
    }
  }

  if (!doomed.empty()) remove_vertices(instance, doomed, map);
  return result;
}

EdgeReductionResult reduce_edges(GtspInstance& instance, IdMap& map,
                                 const EdgeScanOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  EdgeReductionResult result;
  result.pairs_at_entry = instance.inter_cluster_pairs();
  if (instance.m() < 3) {
    result.skipped_small_m = true;
    return result;
  }

  for (ClusterId c = 0; c < static_cast<ClusterId>(instance.m()); ++c) {
    if (instance.cluster_size(c) < 2) continue;
    const std::vector<VertexId> anchors(instance.cluster(c).begin(), instance.cluster(c).end());
    for (VertexId v : anchors) {
      for (const auto& [u, anchor] : reduce_edges_for_anchor(instance, v, options)) {
        const VertexId a = map.original_of(u), b = map.original_of(anchor);
        result.removed_edges.emplace_back(std::min(a, b), std::max(a, b));
      }
    }
  }
  result.strip = strip_isolated_vertices(instance, map);

  result.time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace gtsp
