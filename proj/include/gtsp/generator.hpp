#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "gtsp/instance.hpp"

namespace gtsp {

/// How the first farthest-point center is picked.
enum class CenterSeedRule {
  /// Farthest from the coordinate centroid (plain Euclidean on the raw
  /// coordinates). Instances without coordinates fall back to max_distance_sum.
  farthest_from_centroid,
  /// Largest sum of matrix distances to all other vertices.
  max_distance_sum,
  /// Vertex 0.
  lowest_index,
};

const char* to_string(CenterSeedRule rule);

struct ClusteringConfig {
  std::optional<std::size_t> m;  // default: ceil(n / 5)
  CenterSeedRule seed_rule = CenterSeedRule::farthest_from_centroid;
};

std::size_t default_cluster_count(std::size_t n);

/// Farthest-point clustering over the weight matrix. Every tie goes to the
/// smallest index. Cluster i is the cluster of the i-th chosen center; the
/// instance is named "<m><tsp name>".
GtspInstance cluster_instance(const TspInstance& tsp, const ClusteringConfig& config = {});

/// Uniform random points (EUC_2D, square with diagonal max_weight) clustered
/// into m sets with cluster_instance. Named "<m>planar<n>-<seed>".
GtspInstance clustered_planar_instance(std::uint64_t seed, std::size_t n, std::size_t m,
                                       std::int64_t max_weight = 100000);

}  // namespace gtsp
