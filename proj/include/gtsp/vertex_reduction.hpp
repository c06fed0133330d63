#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "gtsp/execution.hpp"
#include "gtsp/instance.hpp"

namespace gtsp {

/// Signed difference dist(x, r) - dist(x, s).
///
/// Infinite operands saturate so that the sum of two deltas keeps the sign
/// the exact extended-real arithmetic would give:
///   dist(x, r) infinite            -> kDeltaPosInf (the path through r is unusable)
///   dist(x, s) infinite, r finite  -> kDeltaNegInf (s cannot stand in via x)
/// kDeltaPosInf + kDeltaNegInf stays positive, and any finite delta added to
/// a saturated one keeps the saturated sign.
using Delta = std::int64_t;
inline constexpr Delta kDeltaPosInf = std::int64_t{1} << 61;
inline constexpr Delta kDeltaNegInf = -(std::int64_t{1} << 60);

inline Delta delta_of(Weight to_r, Weight to_s) {
  if (to_r.is_infinite()) return kDeltaPosInf;
  if (to_s.is_infinite()) return kDeltaNegInf;
  return to_r.value() - to_s.value();
}

/// Checked form: r and s must share a cluster, x must lie outside it.
Delta delta(const GtspInstance& instance, VertexId x, VertexId r, VertexId s);

/// Differences Table for candidate r: one row per cluster-mate s, one column
/// per vertex x outside r's cluster, columns grouped by cluster in index order.
struct DifferencesTable {
  VertexId candidate = -1;
  std::vector<VertexId> rows;             // s, in scan order
  std::vector<VertexId> cols;             // x
  std::vector<ClusterId> col_cluster;     // cluster of cols[i]
  std::vector<std::size_t> group_begin;   // column offsets per cluster group, plus end
  std::vector<Delta> values;              // column-major: values[col * rows + row]
  std::vector<std::size_t> neg_count;     // per row, in stored order
  std::vector<Delta> vertexmax;           // per column
  std::vector<Delta> clustermin;          // per group
  std::vector<Delta> totalmin;            // per group; min of clustermin over earlier groups
                                          // (kDeltaPosInf for the first group)

  std::size_t row_count() const { return rows.size(); }
  std::size_t col_count() const { return cols.size(); }
  std::size_t group_count() const { return clustermin.size(); }
  Delta at(std::size_t row, std::size_t col) const { return values[col * rows.size() + row]; }
};

struct RedundancyOutcome {
  bool redundant = false;
  /// First failing column pair (x, y), present only when the full scan ran.
  std::optional<std::pair<VertexId, VertexId>> witness;
  /// Set when the acceleration heuristic decided; names the two clusters
  /// whose column maxima sum to a negative value.
  bool early_exit = false;
  std::optional<std::pair<ClusterId, ClusterId>> early_exit_clusters;
};

struct TableOptions {
  bool early_exit = true;
};

/// Builds the table cluster by cluster. With early exit enabled it returns a
/// not-redundant outcome as soon as totalmin + clustermin < 0 for a group.
/// The completed table has its fewest-negatives row hoisted to the front.
std::variant<DifferencesTable, RedundancyOutcome> build_table(const GtspInstance& instance,
                                                              VertexId r,
                                                              TableOptions options = {});

/// Checks every column pair from distinct clusters against the rows.
RedundancyOutcome scan_table(const DifferencesTable& table);

RedundancyOutcome is_vertex_redundant(const GtspInstance& instance, VertexId r,
                                      TableOptions options = {});

struct VertexReductionOptions {
  Execution execution = Execution::serial;
  int max_tests_per_vertex = 2;
};

struct VertexReductionResult {
  std::vector<VertexId> removed;  // original ids, in removal order
  std::size_t n_before = 0;
  std::uint64_t tests = 0;
  std::uint64_t early_exits = 0;
  std::size_t cycles = 0;
  bool skipped_small_m = false;  // m < 3: nothing was attempted
  double time_ms = 0.0;

  double removed_pct() const {
    return n_before == 0 ? 0.0 : 100.0 * static_cast<double>(removed.size()) / static_cast<double>(n_before);
  }
};

/// Cyclic redundancy testing in ascending current-id order with a per-vertex
/// test budget; redundant vertices are removed immediately.
VertexReductionResult reduce_vertices(GtspInstance& instance, IdMap& map,
                                      VertexReductionOptions options = {});

namespace detail {

/// OpenMP kernel: evaluates candidates speculatively in parallel against the
/// frozen instance and commits verdicts up to the first redundant one.
VertexReductionResult reduce_vertices_parallel(GtspInstance& instance, IdMap& map,
                                               const VertexReductionOptions& options);

}  // namespace detail

}  // namespace gtsp
