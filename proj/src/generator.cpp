#include "gtsp/generator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gtsp/errors.hpp"
#include "gtsp/oracle.hpp"

namespace gtsp {

namespace {

VertexId first_center(const TspInstance& tsp, CenterSeedRule rule) {
  const std::size_t n = tsp.n();
  if (rule == CenterSeedRule::lowest_index) return 0;

  if (rule == CenterSeedRule::farthest_from_centroid && tsp.coords) {
    const auto& pts = tsp.coords->points;
    double cx = 0.0, cy = 0.0;
    for (const Point& p : pts) {
      cx += p.x;
      cy += p.y;
    }
    cx /= static_cast<double>(n);
    cy /= static_cast<double>(n);
    VertexId best = 0;
    double best_d = -1.0;
    for (std::size_t v = 0; v < n; ++v) {
      const double d = std::hypot(pts[v].x - cx, pts[v].y - cy);
      if (d > best_d) {
        best_d = d;
        best = static_cast<VertexId>(v);
      }
    }
    return best;
  }

  VertexId best = 0;
  std::int64_t best_sum = -1;
  for (std::size_t v = 0; v < n; ++v) {
    std::int64_t sum = 0;
    for (const Weight w : tsp.weights.row(static_cast<VertexId>(v))) sum += w.value();
    if (sum > best_sum) {
      best_sum = sum;
      best = static_cast<VertexId>(v);
    }
  }
  return best;
}

}  // namespace

const char* to_string(CenterSeedRule rule) {
  switch (rule) {
    case CenterSeedRule::farthest_from_centroid: return "farthest_from_centroid";
    case CenterSeedRule::max_distance_sum: return "max_distance_sum";
    case CenterSeedRule::lowest_index: return "lowest_index";
  }
  return "?";
}

std::size_t default_cluster_count(std::size_t n) { return (n + 4) / 5; }

GtspInstance cluster_instance(const TspInstance& tsp, const ClusteringConfig& config) {
  const std::size_t n = tsp.n();
  const std::size_t m = config.m.value_or(default_cluster_count(n));
  if (m < 2) throw ContractViolation("cluster_instance: need at least 2 clusters, got " + std::to_string(m));
  if (m > n) {
    throw ContractViolation("cluster_instance: " + std::to_string(m) + " clusters requested for " +
                            std::to_string(n) + " vertices");
  }
  bool any_apart = false;
  for (std::size_t u = 0; u < n && !any_apart; ++u) {
    for (const Weight w : tsp.weights.row(static_cast<VertexId>(u))) {
      if (w.is_infinite() || w.value() != 0) {
        any_apart = true;
        break;
      }
    }
  }
  if (!any_apart) throw ContractViolation("cluster_instance: all points coincide");

  std::vector<VertexId> centers{first_center(tsp, config.seed_rule)};
  std::vector<bool> is_center(n, false);
  is_center[static_cast<std::size_t>(centers[0])] = true;
  // to_nearest[v]: distance from v to the closest chosen center.
  std::vector<Weight> to_nearest(n);
  for (std::size_t v = 0; v < n; ++v) to_nearest[v] = tsp.weights.at(static_cast<VertexId>(v), centers[0]);

  while (centers.size() < m) {
    VertexId next = -1;
    for (std::size_t v = 0; v < n; ++v) {
      if (is_center[v]) continue;
      if (next < 0 || to_nearest[static_cast<std::size_t>(next)] < to_nearest[v]) {
        next = static_cast<VertexId>(v);
      }
    }
    centers.push_back(next);
    is_center[static_cast<std::size_t>(next)] = true;
    for (std::size_t v = 0; v < n; ++v) {
      to_nearest[v] = std::min(to_nearest[v], tsp.weights.at(static_cast<VertexId>(v), next));
    }
  }

  std::vector<std::vector<VertexId>> clusters(m);
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t home = 0;
    if (is_center[v]) {
      while (centers[home] != static_cast<VertexId>(v)) ++home;
    } else {
      for (std::size_t c = 1; c < m; ++c) {
        if (tsp.weights.at(static_cast<VertexId>(v), centers[c]) <
            tsp.weights.at(static_cast<VertexId>(v), centers[home])) {
          home = c;
        }
      }
    }
    clusters[home].push_back(static_cast<VertexId>(v));
  }

  std::string base = tsp.name;
  if (base.size() > 4 && base.ends_with(".tsp")) base.resize(base.size() - 4);
  return GtspInstance::make(std::to_string(m) + base, tsp.weights, std::move(clusters),
                            tsp.coords);
}

GtspInstance clustered_planar_instance(std::uint64_t seed, std::size_t n, std::size_t m,
                                       std::int64_t max_weight) {
  // random_instance supplies the points; its random partition is discarded.
  const GtspInstance points = random_instance(seed, n, 3, max_weight, RandomMode::planar);
  TspInstance tsp{"planar" + std::to_string(n) + "-" + std::to_string(seed), points.weights(),
                  points.coords()};
  return cluster_instance(tsp, {.m = m});
}

}  // namespace gtsp
