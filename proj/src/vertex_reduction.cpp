#include "gtsp/vertex_reduction.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <string>

#include "gtsp/errors.hpp"

namespace gtsp {

namespace {

void require_candidate(const GtspInstance& instance, VertexId r, const char* op) {
  if (r < 0 || static_cast<std::size_t>(r) >= instance.n()) {
    throw ContractViolation(std::string(op) + ": vertex " + std::to_string(r) + " out of range");
  }
  if (instance.m() < 3) {
    throw ContractViolation(std::string(op) + ": needs at least 3 clusters, instance has " +
                            std::to_string(instance.m()));
  }
  if (instance.cluster_size(instance.cluster_of(r)) < 2) {
    throw ContractViolation(std::string(op) + ": vertex " + std::to_string(r) +
                            " is alone in its cluster");
  }
}

}  // namespace

Delta delta(const GtspInstance& instance, VertexId x, VertexId r, VertexId s) {
  if (r == s || instance.cluster_of(r) != instance.cluster_of(s)) {
    throw ContractViolation("delta: r and s must be distinct members of one cluster");
  }
  if (instance.cluster_of(x) == instance.cluster_of(r)) {
    throw ContractViolation("delta: x must lie outside the cluster of r");
  }
  return delta_of(instance.dist(x, r), instance.dist(x, s));
}

std::variant<DifferencesTable, RedundancyOutcome> build_table(const GtspInstance& instance,
                                                              VertexId r, TableOptions options) {
  require_candidate(instance, r, "build_table");

  const ClusterId home = instance.cluster_of(r);
  DifferencesTable t;
  t.candidate = r;
  for (VertexId s : instance.cluster(home)) {
    if (s != r) t.rows.push_back(s);
  }
  const std::size_t row_n = t.rows.size();
  const std::size_t col_n = instance.n() - instance.cluster_size(home);
  t.cols.reserve(col_n);
  t.col_cluster.reserve(col_n);
  t.values.reserve(col_n * row_n);
  t.vertexmax.reserve(col_n);
  t.neg_count.assign(row_n, 0);

  Delta running_min = kDeltaPosInf;
  ClusterId running_argmin = -1;

  for (ClusterId c = 0; c < static_cast<ClusterId>(instance.m()); ++c) {
    if (c == home) continue;
    t.group_begin.push_back(t.cols.size());
    Delta cluster_min = std::numeric_limits<Delta>::max();
    for (VertexId x : instance.cluster(c)) {
      const auto dist_x = instance.weights().row(x);
      const Weight to_r = dist_x[static_cast<std::size_t>(r)];
      Delta column_max = std::numeric_limits<Delta>::min();
      for (std::size_t k = 0; k < row_n; ++k) {
        const Delta d = delta_of(to_r, dist_x[static_cast<std::size_t>(t.rows[k])]);
        t.values.push_back(d);
        if (d < 0) ++t.neg_count[k];
        column_max = std::max(column_max, d);
      }
      t.cols.push_back(x);
      t.col_cluster.push_back(c);
      t.vertexmax.push_back(column_max);
      cluster_min = std::min(cluster_min, column_max);
    }
    t.clustermin.push_back(cluster_min);
    t.totalmin.push_back(running_min);
    if (options.early_exit && running_argmin >= 0 && running_min + cluster_min < 0) {
      RedundancyOutcome out;
      out.early_exit = true;
      out.early_exit_clusters = std::pair{running_argmin, c};
      return out;
    }
    if (cluster_min < running_min) {
      running_min = cluster_min;
      running_argmin = c;
    }
  }
  t.group_begin.push_back(t.cols.size());

  // Hoist the row with the fewest negative entries to the front.
  const auto best = static_cast<std::size_t>(
      std::min_element(t.neg_count.begin(), t.neg_count.end()) - t.neg_count.begin());
  if (best != 0) {
    std::rotate(t.rows.begin(), t.rows.begin() + static_cast<std::ptrdiff_t>(best),
                t.rows.begin() + static_cast<std::ptrdiff_t>(best) + 1);
    std::rotate(t.neg_count.begin(), t.neg_count.begin() + static_cast<std::ptrdiff_t>(best),
                t.neg_count.begin() + static_cast<std::ptrdiff_t>(best) + 1);
    for (std::size_t col = 0; col < t.cols.size(); ++col) {
      auto first = t.values.begin() + static_cast<std::ptrdiff_t>(col * row_n);
      std::rotate(first, first + static_cast<std::ptrdiff_t>(best),
                  first + static_cast<std::ptrdiff_t>(best) + 1);
    }
  }
  return t;
}

RedundancyOutcome scan_table(const DifferencesTable& table) {
  RedundancyOutcome out;
  const std::size_t row_n = table.row_count();
  const std::size_t col_n = table.col_count();
  if (row_n == 0) return out;  // no cluster-mate: nothing can stand in
  if (table.neg_count[0] == 0) {
    out.redundant = true;
    return out;
  }

  // A pair whose first-row entries are both non-negative is settled by that
  // row, so every unsettled pair has a column that is negative in row 0.
  std::vector<std::size_t> negative_first;
  std::vector<std::size_t> group_end(col_n);
  for (std::size_t g = 0; g + 1 < table.group_begin.size(); ++g) {
    for (std::size_t col = table.group_begin[g]; col < table.group_begin[g + 1]; ++col) {
      group_end[col] = table.group_begin[g + 1];
      if (table.at(0, col) < 0) negative_first.push_back(col);
    }
  }

  const Delta* v = table.values.data();
  auto pair_fails = [&](std::size_t a, std::size_t b) {
    const Delta* ca = v + a * row_n;
    const Delta* cb = v + b * row_n;
    for (std::size_t k = 0; k < row_n; ++k) {
      if (ca[k] + cb[k] >= 0) return false;
    }
    return true;
  };

  for (std::size_t a = 0; a < col_n; ++a) {
    const std::size_t from = group_end[a];
    if (table.at(0, a) < 0) {
      for (std::size_t b = from; b < col_n; ++b) {
        if (pair_fails(a, b)) {
          out.witness = std::pair{table.cols[a], table.cols[b]};
          return out;
        }
      }
    } else {
      auto it = std::lower_bound(negative_first.begin(), negative_first.end(), from);
      for (; it != negative_first.end(); ++it) {
        if (pair_fails(a, *it)) {
          out.witness = std::pair{table.cols[a], table.cols[*it]};
          return out;
        }
      }
    }
  }
  out.redundant = true;
  return out;
}

RedundancyOutcome is_vertex_redundant(const GtspInstance& instance, VertexId r,
                                      TableOptions options) {
  auto built = build_table(instance, r, options);
  if (auto* early = std::get_if<RedundancyOutcome>(&built)) return *early;
  return scan_table(std::get<DifferencesTable>(built));
}

VertexReductionResult reduce_vertices(GtspInstance& instance, IdMap& map,
                                      VertexReductionOptions options) {
  if (options.execution == Execution::parallel) {
    return detail::reduce_vertices_parallel(instance, map, options);
  }

  const auto start = std::chrono::steady_clock::now();
  VertexReductionResult result;
  result.n_before = instance.n();
  if (instance.m() < 3) {
    result.skipped_small_m = true;
    return result;
  }

  std::vector<int> tests_used(map.original_size(), 0);
  for (;;) {
    bool removed_any = false;
    bool tested_any = false;
    // Compaction preserves relative order, so ascending current id is
    // ascending original id.
    const std::vector<VertexId> sweep = map.current_to_original();
    for (VertexId original : sweep) {
      const auto current = map.current_of(original);
      if (!current) continue;
      auto& used = tests_used[static_cast<std::size_t>(original)];
      if (used >= options.max_tests_per_vertex) continue;
      if (instance.cluster_size(instance.cluster_of(*current)) < 2) continue;

      ++used;
      ++result.tests;
      tested_any = true;
      const RedundancyOutcome outcome = is_vertex_redundant(instance, *current);
      if (outcome.early_exit) ++result.early_exits;
      if (outcome.redundant) {
        remove_vertex(instance, *current, map);
        result.removed.push_back(original);
        removed_any = true;
      }
    }
    if (tested_any) ++result.cycles;
    if (!removed_any) break;
  }

  result.time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace gtsp
