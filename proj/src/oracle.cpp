#include "gtsp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "gtsp/errors.hpp"

namespace gtsp {

namespace {

void require_reducible(const GtspInstance& instance, VertexId v, const char* op) {
  if (v < 0 || static_cast<std::size_t>(v) >= instance.n()) {
    throw ContractViolation(std::string(op) + ": vertex " + std::to_string(v) + " out of range");
  }
  if (instance.m() < 3) {
    throw ContractViolation(std::string(op) + ": needs at least 3 clusters");
  }
  if (instance.cluster_size(instance.cluster_of(v)) < 2) {
    throw ContractViolation(std::string(op) + ": vertex " + std::to_string(v) +
                            " is alone in its cluster");
  }
}

// Uniform integer in [0, bound) by rejection; independent of the standard
// library's distribution implementation.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % bound;
  }
}

double draw_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

bool brute_vertex_redundant(const GtspInstance& instance, VertexId r) {
  require_reducible(instance, r, "brute_vertex_redundant");
  const ClusterId home = instance.cluster_of(r);
  const auto n = static_cast<VertexId>(instance.n());
  for (VertexId x = 0; x < n; ++x) {
    if (instance.cluster_of(x) == home) continue;
    for (VertexId y = x + 1; y < n; ++y) {
      const ClusterId cy = instance.cluster_of(y);
      if (cy == home || cy == instance.cluster_of(x)) continue;
      const Weight through_r = instance.dist(x, r) + instance.dist(r, y);
      bool dominated = false;
      for (VertexId s : instance.cluster(home)) {
        if (s != r && instance.dist(x, s) + instance.dist(s, y) <= through_r) {
          dominated = true;
          break;
        }
      }
      if (!dominated) return false;
    }
  }
  return true;
}

bool brute_edge_redundant(const GtspInstance& instance, VertexId u, VertexId v) {
  require_reducible(instance, v, "brute_edge_redundant");
  if (u < 0 || static_cast<std::size_t>(u) >= instance.n()) {
    throw ContractViolation("brute_edge_redundant: vertex " + std::to_string(u) + " out of range");
  }
  const ClusterId c = instance.cluster_of(v);
  const ClusterId cu = instance.cluster_of(u);
  if (cu == c) throw ContractViolation("brute_edge_redundant: u and v share a cluster");

  for (VertexId x = 0; x < static_cast<VertexId>(instance.n()); ++x) {
    const ClusterId cx = instance.cluster_of(x);
    if (cx == c || cx == cu) continue;
    const Weight through_v = instance.dist(u, v) + instance.dist(v, x);
    bool dominated = false;
    for (VertexId w : instance.cluster(c)) {
      if (w != v && instance.dist(u, w) + instance.dist(w, x) <= through_v) {
        dominated = true;
        break;
      }
    }
    if (!dominated) return false;
  }
  return true;
}

Weight tour_weight(const GtspInstance& instance, const std::vector<VertexId>& order) {
  Weight total(0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    total += instance.dist(order[i], order[(i + 1) % order.size()]);
  }
  return total;
}

std::vector<VertexId> canonical_cycle(std::vector<VertexId> order) {
  if (order.size() < 3) {
    std::sort(order.begin(), order.end());
    return order;
  }
  std::rotate(order.begin(), std::min_element(order.begin(), order.end()), order.end());
  if (order.back() < order[1]) std::reverse(order.begin() + 1, order.end());
  return order;
}

GtspInstance random_instance(std::uint64_t seed, std::size_t n, std::size_t m,
                             std::int64_t max_weight, RandomMode mode) {
  if (m < 3) throw ContractViolation("random_instance: needs at least 3 clusters");
  if (n < m) {
    throw ContractViolation("random_instance: n=" + std::to_string(n) + " is below m=" +
                            std::to_string(m));
  }
  if (max_weight < 1 || max_weight > kMaxFiniteWeight) {
    throw ContractViolation("random_instance: max_weight out of range");
  }

  std::mt19937_64 rng(seed);

  // Every cluster gets one guaranteed member, the rest are drawn, then the
  // labels are shuffled over vertex ids.
  std::vector<ClusterId> label(n);
  for (std::size_t i = 0; i < n; ++i) {
    label[i] = i < m ? static_cast<ClusterId>(i) : static_cast<ClusterId>(draw_below(rng, m));
  }
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(label[i], label[draw_below(rng, i + 1)]);
  }
  std::vector<std::vector<VertexId>> clusters(m);
  for (std::size_t v = 0; v < n; ++v) {
    clusters[static_cast<std::size_t>(label[v])].push_back(static_cast<VertexId>(v));
  }

  WeightMatrix weights(n);
  std::optional<Coordinates> coords;
  if (mode == RandomMode::uniform) {
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        const auto w = 1 + static_cast<std::int64_t>(
                               draw_below(rng, static_cast<std::uint64_t>(max_weight)));
        weights.set_symmetric(static_cast<VertexId>(u), static_cast<VertexId>(v), Weight(w));
      }
    }
  } else {
    const double side = static_cast<double>(max_weight) / std::sqrt(2.0);
    Coordinates c{EdgeWeightType::euc_2d, {}};
    c.points.reserve(n);
    for (std::size_t v = 0; v < n; ++v) {
      const double x = draw_unit(rng) * side;
      const double y = draw_unit(rng) * side;
      c.points.push_back({x, y});
    }
    weights = distance_matrix(c);
    coords = std::move(c);
  }

  return GtspInstance::make("random-" + std::to_string(seed), std::move(weights),
                            std::move(clusters), std::move(coords));
}

}  // namespace gtsp
