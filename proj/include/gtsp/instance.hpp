#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gtsp/weight.hpp"

namespace gtsp {

using VertexId = std::int32_t;
using ClusterId = std::int32_t;

/// Dense symmetric-by-convention n x n weight matrix (row-major).
class WeightMatrix {
 public:
  WeightMatrix() = default;
  explicit WeightMatrix(std::size_t n, Weight fill = Weight(0))
      : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }

  Weight at(VertexId u, VertexId v) const {
    return data_[static_cast<std::size_t>(u) * n_ + static_cast<std::size_t>(v)];
  }
  void set(VertexId u, VertexId v, Weight w) {
    data_[static_cast<std::size_t>(u) * n_ + static_cast<std::size_t>(v)] = w;
  }
  void set_symmetric(VertexId u, VertexId v, Weight w) {
    set(u, v, w);
    set(v, u, w);
  }

  std::span<const Weight> row(VertexId u) const {
    return {data_.data() + static_cast<std::size_t>(u) * n_, n_};
  }

  /// Drops the listed rows/columns; `keep[i]` selects survivors.
  WeightMatrix compacted(const std::vector<bool>& keep) const;

  friend bool operator==(const WeightMatrix&, const WeightMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Weight> data_;
};

enum class EdgeWeightType { explicit_matrix, euc_2d, geo };

const char* to_string(EdgeWeightType type);

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Source coordinates for coordinate-based instances. Distances are always
/// taken from the weight matrix; coordinates are kept for re-emission and
/// for the clustering generator.
struct Coordinates {
  EdgeWeightType type = EdgeWeightType::euc_2d;
  std::vector<Point> points;
  friend bool operator==(const Coordinates&, const Coordinates&) = default;
};

/// TSPLIB rounding rules.
std::int64_t euc_2d_distance(Point a, Point b);
std::int64_t geo_distance(Point a, Point b);
WeightMatrix distance_matrix(const Coordinates& coords);

/// Plain TSP data as read from a TSPLIB file.
struct TspInstance {
  std::string name;
  WeightMatrix weights;
  std::optional<Coordinates> coords;

  std::size_t n() const { return weights.size(); }
};

struct Violation {
  enum class Kind {
    negative_weight,
    weight_too_large,
    asymmetric,
    nonzero_diagonal,
    empty_cluster,
    unassigned_vertex,
    vertex_in_two_clusters,
    vertex_out_of_range,
    coords_mismatch,
  };
  Kind kind;
  std::string detail;
};

/// Vertex set partitioned into clusters plus a symmetric weight matrix.
///
/// The public constructor stores its arguments as given so that malformed
/// data can be inspected with `validate`. Use `make` for a checked build.
class GtspInstance {
 public:
  GtspInstance() = default;
  GtspInstance(std::string name, WeightMatrix weights,
               std::vector<std::vector<VertexId>> clusters,
               std::optional<Coordinates> coords = std::nullopt);

  /// Validated construction; throws ContractViolation listing the first
  /// violation.
  static GtspInstance make(std::string name, WeightMatrix weights,
                           std::vector<std::vector<VertexId>> clusters,
                           std::optional<Coordinates> coords = std::nullopt);

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  std::size_t n() const { return weights_.size(); }
  std::size_t m() const { return clusters_.size(); }

  Weight dist(VertexId u, VertexId v) const { return weights_.at(u, v); }
  const WeightMatrix& weights() const { return weights_; }

  ClusterId cluster_of(VertexId v) const { return cluster_of_[static_cast<std::size_t>(v)]; }
  std::span<const VertexId> cluster(ClusterId c) const {
    return clusters_[static_cast<std::size_t>(c)];
  }
  const std::vector<std::vector<VertexId>>& clusters() const { return clusters_; }
  std::size_t cluster_size(ClusterId c) const {
    return clusters_[static_cast<std::size_t>(c)].size();
  }

  const std::optional<Coordinates>& coords() const { return coords_; }

  /// Number of unordered vertex pairs lying in distinct clusters.
  std::uint64_t inter_cluster_pairs() const;

  /// Mutators used by the reduction passes; see the free functions below.
  void set_edge_infinite(VertexId u, VertexId v);
  void remove_vertices(const std::vector<bool>& doomed);

  friend bool operator==(const GtspInstance&, const GtspInstance&) = default;

 private:
  void rebuild_cluster_index();

  std::string name_;
  WeightMatrix weights_;
  std::vector<std::vector<VertexId>> clusters_;
  std::vector<ClusterId> cluster_of_;
  std::optional<Coordinates> coords_;
};

/// Bijection between original vertex ids and current (compacted) ids.
class IdMap {
 public:
  IdMap() = default;
  explicit IdMap(std::size_t n);

  std::size_t original_size() const { return original_to_current_.size(); }
  std::size_t current_size() const { return current_to_original_.size(); }

  VertexId original_of(VertexId current) const {
    return current_to_original_[static_cast<std::size_t>(current)];
  }
  std::optional<VertexId> current_of(VertexId original) const;

  const std::vector<VertexId>& current_to_original() const { return current_to_original_; }

  void erase(const std::vector<bool>& doomed);

  friend bool operator==(const IdMap&, const IdMap&) = default;

 private:
  std::vector<VertexId> current_to_original_;
  std::vector<VertexId> original_to_current_;  // -1 when removed
};

/// Removes current vertex `v`. Refuses to empty a cluster.
void remove_vertex(GtspInstance& instance, VertexId v, IdMap& map);

/// Removes the vertex whose original id is `original`; refuses ids that
/// were already removed.
void remove_original_vertex(GtspInstance& instance, VertexId original, IdMap& map);

/// Removes several current vertices in one compaction.
void remove_vertices(GtspInstance& instance, const std::vector<VertexId>& vertices,
                     IdMap& map);

/// Marks uv unusable in both directions. u and v must lie in distinct clusters.
void set_edge_infinite(GtspInstance& instance, VertexId u, VertexId v);

std::vector<Violation> validate(const GtspInstance& instance);

}  // namespace gtsp
