#include <algorithm>
#include <chrono>
#include <cstdint>

#include "gtsp/vertex_reduction.hpp"

namespace gtsp::detail {

// Speculative batches: every candidate in a batch is tested against the same
// frozen instance. Verdicts are committed in sweep order up to and including
// the first redundant one; the rest are discarded and re-tested against the
// reduced instance. Committed verdicts are exactly those the serial sweep
// would compute, so the two paths agree on removals and test counts.
VertexReductionResult reduce_vertices_parallel(GtspInstance& instance, IdMap& map,
                                               const VertexReductionOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  VertexReductionResult result;
  result.n_before = instance.n();
  if (instance.m() < 3) {
    result.skipped_small_m = true;
    return result;
  }

  const std::size_t batch_size = static_cast<std::size_t>(std::max(1, max_threads())) * 4;
  std::vector<int> tests_used(map.original_size(), 0);
  std::vector<VertexId> batch;
  std::vector<std::size_t> batch_pos;
  std::vector<RedundancyOutcome> outcomes;

  for (;;) {
    bool removed_any = false;
    bool tested_any = false;
    const std::vector<VertexId> sweep = map.current_to_original();
    std::size_t pos = 0;

    while (pos < sweep.size()) {
      batch.clear();
      batch_pos.clear();
      std::size_t scan = pos;
      for (; scan < sweep.size() && batch.size() < batch_size; ++scan) {
        const VertexId original = sweep[scan];
        const auto current = map.current_of(original);
        if (!current) continue;
        if (tests_used[static_cast<std::size_t>(original)] >= options.max_tests_per_vertex) continue;
        if (instance.cluster_size(instance.cluster_of(*current)) < 2) continue;
        batch.push_back(*current);
        batch_pos.push_back(scan);
      }
      if (batch.empty()) break;

      outcomes.assign(batch.size(), RedundancyOutcome{});
      const auto count = static_cast<std::int64_t>(batch.size());
      const GtspInstance& frozen = instance;
#pragma omp parallel for schedule(dynamic, 1)
      for (std::int64_t i = 0; i < count; ++i) {
        outcomes[static_cast<std::size_t>(i)] =
            is_vertex_redundant(frozen, batch[static_cast<std::size_t>(i)]);
      }

      pos = scan;
      for (std::size_t i = 0; i < batch.size(); ++i) {
        const VertexId original = sweep[batch_pos[i]];
        ++tests_used[static_cast<std::size_t>(original)];
        ++result.tests;
        tested_any = true;
        if (outcomes[i].early_exit) ++result.early_exits;
        if (outcomes[i].redundant) {
          remove_vertex(instance, batch[i], map);
          result.removed.push_back(original);
          removed_any = true;
          pos = batch_pos[i] + 1;
          break;
        }
      }
    }
    if (tested_any) ++result.cycles;
    if (!removed_any) break;
  }

  result.time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace gtsp::detail
