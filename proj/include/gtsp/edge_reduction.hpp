#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gtsp/execution.hpp"
#include "gtsp/instance.hpp"
#include "gtsp/vertex_reduction.hpp"

namespace gtsp {

using Edge = std::pair<VertexId, VertexId>;

struct PEntry {
  Delta delta;  // dist(x, anchor) - dist(x, pivot)
  VertexId x;
  ClusterId cluster;
};

/// Per-anchor scan input: differences against the pivot for every vertex
/// outside the anchor's cluster, sorted non-decreasing (ties by vertex id).
struct EdgeScanState {
  VertexId anchor = -1;
  VertexId pivot = -1;
  std::vector<PEntry> p_entries;
};

EdgeScanState build_edge_scan_state(const GtspInstance& instance, VertexId anchor);

struct EdgeScanOptions {
  Execution execution = Execution::serial;
  /// false selects the unsorted full scan over every x (reference path).
  bool sorted_scan = true;
  /// Fault injection for mutation testing: drops the x-not-in-U guard.
  bool skip_foreign_cluster_guard = false;
};

/// Vertices u whose (finite) edge to `anchor` is redundant on the given,
/// unmodified instance. Ascending id order.
std::vector<VertexId> redundant_edges_for_anchor(const GtspInstance& instance, VertexId anchor,
                                                 const EdgeScanOptions& options = {});

/// Same test, then marks every found edge INFINITY. Returns (u, anchor) pairs.
std::vector<Edge> reduce_edges_for_anchor(GtspInstance& instance, VertexId anchor,
                                          const EdgeScanOptions& options = {});

struct StripResult {
  std::vector<VertexId> removed;     // original ids, removal order
  std::vector<VertexId> infeasible;  // original ids of singleton-cluster vertices that qualified
};

/// Removes, until a fixed point, every vertex of a cluster with at least two
/// members whose finite edges reach at most one other cluster.
StripResult strip_isolated_vertices(GtspInstance& instance, IdMap& map);

struct EdgeReductionResult {
  std::vector<Edge> removed_edges;  // original ids, (smaller, larger), marking order
  std::uint64_t pairs_at_entry = 0;
  StripResult strip;
  bool skipped_small_m = false;
  double time_ms = 0.0;

  double removed_pct() const {
    return pairs_at_entry == 0 ? 0.0
                               : 100.0 * static_cast<double>(removed_edges.size()) /
                                     static_cast<double>(pairs_at_entry);
  }
};

/// Anchors in cluster order, ascending id within a cluster; each anchor sees
/// the marks of the anchors before it. Finishes with strip_isolated_vertices.
EdgeReductionResult reduce_edges(GtspInstance& instance, IdMap& map,
                                 const EdgeScanOptions& options = {});

}  // namespace gtsp
