#include <cstdint>
#include <string>

#include "gtsp/errors.hpp"
#include "gtsp/oracle.hpp"

namespace gtsp {

namespace {

std::uint64_t factorial(std::size_t k) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= i;
  return f;
}

// Lehmer decoding of `rank` into an ordering of clusters 1..m-1.
void unrank(std::uint64_t rank, std::size_t m, std::vector<ClusterId>& pool,
            std::vector<ClusterId>& out) {
  pool.clear();
  for (std::size_t c = 1; c < m; ++c) pool.push_back(static_cast<ClusterId>(c));
  out.clear();
  for (std::size_t left = m - 1; left > 0; --left) {
    const std::uint64_t f = factorial(left - 1);
    const auto idx = static_cast<std::size_t>(rank / f);
    rank %= f;
    out.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
}

struct Best {
  std::optional<Tour> tour;

  void offer(Tour candidate) {
    if (!tour || candidate.weight < tour->weight ||
        (candidate.weight == tour->weight && candidate.order < tour->order)) {
      tour = std::move(candidate);
    }
  }
};

/// Layered shortest path for one cluster order. Scratch buffers are reused.
class OrderSolver {
 public:
  explicit OrderSolver(const GtspInstance& instance) : in_(instance) {}

  void solve(const std::vector<ClusterId>& rest, Best& best) {
    const std::size_t layers = rest.size();
    pred_.resize(layers);
    for (VertexId start : in_.cluster(0)) {
      // cost_ holds the best path weight from start to each vertex of the
      // current layer.
      auto first = in_.cluster(rest[0]);
      cost_.assign(first.size(), Weight::infinity());
      for (std::size_t j = 0; j < first.size(); ++j) cost_[j] = in_.dist(start, first[j]);

      for (std::size_t layer = 1; layer < layers; ++layer) {
        auto from = in_.cluster(rest[layer - 1]);
        auto to = in_.cluster(rest[layer]);
        next_.assign(to.size(), Weight::infinity());
        pred_[layer].assign(to.size(), -1);
        for (std::size_t j = 0; j < to.size(); ++j) {
          for (std::size_t i = 0; i < from.size(); ++i) {
            const Weight w = cost_[i] + in_.dist(from[i], to[j]);
            if (w < next_[j]) {
              next_[j] = w;
              pred_[layer][j] = static_cast<int>(i);
            }
          }
        }
        cost_.swap(next_);
      }

      auto last = in_.cluster(rest[layers - 1]);
      Weight total = Weight::infinity();
      int end = -1;
      for (std::size_t j = 0; j < last.size(); ++j) {
        const Weight w = cost_[j] + in_.dist(last[j], start);
        if (w < total) {
          total = w;
          end = static_cast<int>(j);
        }
      }
      if (total.is_infinite()) continue;
      if (best.tour && best.tour->weight < total) continue;

      std::vector<VertexId> order(layers + 1);
      order[0] = start;
      int idx = end;
      for (std::size_t layer = layers; layer-- > 0;) {
        order[layer + 1] = in_.cluster(rest[layer])[static_cast<std::size_t>(idx)];
        if (layer > 0) idx = pred_[layer][static_cast<std::size_t>(idx)];
      }
      best.offer(Tour{canonical_cycle(std::move(order)), total});
    }
  }

 private:
  const GtspInstance& in_;
  std::vector<Weight> cost_, next_;
  std::vector<std::vector<int>> pred_;
};

}  // namespace

std::optional<Tour> exact_solve(const GtspInstance& instance, const ExactSolveOptions& options) {
  const std::size_t m = instance.m();
  if (m < 3) throw ContractViolation("exact_solve: needs at least 3 clusters");
  if (m > options.max_clusters) {
    throw ContractViolation("exact_solve: " + std::to_string(m) + " clusters exceeds the cap of " +
                            std::to_string(options.max_clusters));
  }

  const auto orders = static_cast<std::int64_t>(factorial(m - 1));
  Best best;

  if (options.execution == Execution::parallel) {
#pragma omp parallel
    {
      Best local;
      OrderSolver solver(instance);
      std::vector<ClusterId> pool, rest;
#pragma omp for schedule(dynamic, 64)
      for (std::int64_t rank = 0; rank < orders; ++rank) {
        unrank(static_cast<std::uint64_t>(rank), m, pool, rest);
        if (rest.front() > rest.back()) continue;  // mirrored order
        solver.solve(rest, local);
      }
#pragma omp critical(gtsp_exact_solve_merge)
      if (local.tour) best.offer(std::move(*local.tour));
    }
  } else {
    OrderSolver solver(instance);
    std::vector<ClusterId> pool, rest;
    for (std::int64_t rank = 0; rank < orders; ++rank) {
      unrank(static_cast<std::uint64_t>(rank), m, pool, rest);
      if (rest.front() > rest.back()) continue;
      solver.solve(rest, best);
    }
  }
  return best.tour;
}

}  // namespace gtsp
