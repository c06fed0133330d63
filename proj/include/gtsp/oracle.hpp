#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gtsp/execution.hpp"
#include "gtsp/instance.hpp"

namespace gtsp {

/// Literal check of the vertex redundancy definition: every pair x, y from
/// two distinct clusters other than r's has a cluster-mate s of r with
/// dist(x,s) + dist(s,y) <= dist(x,r) + dist(r,y).
bool brute_vertex_redundant(const GtspInstance& instance, VertexId r);

/// Literal check of the edge redundancy definition for uv, v in cluster C,
/// u in cluster U: every x outside U and C has some v' in C \ {v} with
/// dist(u,v') + dist(v',x) <= dist(u,v) + dist(v,x).
bool brute_edge_redundant(const GtspInstance& instance, VertexId u, VertexId v);

/// One vertex per cluster, visited cyclically.
struct Tour {
  std::vector<VertexId> order;
  Weight weight;

  friend bool operator==(const Tour&, const Tour&) = default;
};

Weight tour_weight(const GtspInstance& instance, const std::vector<VertexId>& order);

/// Rotates the cycle to start at its smallest id and picks the direction
/// whose second element is smaller.
std::vector<VertexId> canonical_cycle(std::vector<VertexId> order);

struct ExactSolveOptions {
  std::size_t max_clusters = 10;
  Execution execution = Execution::serial;
};

/// Optimal tour by enumerating cluster orders (cluster 0 first, one of each
/// mirrored pair) with a layered shortest path per order. nullopt when every
/// tour uses an INFINITY edge. Among optimal tours the one with the smallest
/// canonical cycle found is returned, independently of thread count.
std::optional<Tour> exact_solve(const GtspInstance& instance, const ExactSolveOptions& options = {});

enum class RandomMode { uniform, planar };

/// Deterministic random instance. Uniform mode draws symmetric weights in
/// [1, max_weight]; planar mode draws points in a square whose diagonal is
/// max_weight and rounds Euclidean distances.
GtspInstance random_instance(std::uint64_t seed, std::size_t n, std::size_t m,
                             std::int64_t max_weight, RandomMode mode = RandomMode::uniform);

}  // namespace gtsp
