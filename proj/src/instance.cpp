#include "gtsp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gtsp/errors.hpp"

namespace gtsp {

const char* to_string(EdgeWeightType type) {
  switch (type) {
    case EdgeWeightType::explicit_matrix: return "EXPLICIT";
    case EdgeWeightType::euc_2d: return "EUC_2D";
    case EdgeWeightType::geo: return "GEO";
  }
  return "EXPLICIT";
}

std::int64_t euc_2d_distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return static_cast<std::int64_t>(std::sqrt(dx * dx + dy * dy) + 0.5);
}

namespace {

// TSPLIB truncates the degree part (the published optima depend on it).
double geo_radians(double x) {
  constexpr double kPi = 3.141592;
  const auto deg = static_cast<std::int64_t>(x);
  const double min = x - static_cast<double>(deg);
  return kPi * (static_cast<double>(deg) + 5.0 * min / 3.0) / 180.0;
}

}  // namespace

std::int64_t geo_distance(Point a, Point b) {
  constexpr double kRadius = 6378.388;
  const double lat_a = geo_radians(a.x), lon_a = geo_radians(a.y);
  const double lat_b = geo_radians(b.x), lon_b = geo_radians(b.y);
  const double q1 = std::cos(lon_a - lon_b);
  const double q2 = std::cos(lat_a - lat_b);
  const double q3 = std::cos(lat_a + lat_b);
  return static_cast<std::int64_t>(
      kRadius * std::acos(0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3)) + 1.0);
}

WeightMatrix distance_matrix(const Coordinates& coords) {
  const auto n = coords.points.size();
  WeightMatrix w(n);
  const auto metric = coords.type == EdgeWeightType::geo ? geo_distance : euc_2d_distance;
  const auto sn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < sn; ++i) {
    for (std::int64_t j = i + 1; j < sn; ++j) {
      const Weight d(metric(coords.points[static_cast<std::size_t>(i)],
                            coords.points[static_cast<std::size_t>(j)]));
      w.set(static_cast<VertexId>(i), static_cast<VertexId>(j), d);
      w.set(static_cast<VertexId>(j), static_cast<VertexId>(i), d);
    }
  }
  return w;
}

WeightMatrix WeightMatrix::compacted(const std::vector<bool>& keep) const {
  std::vector<VertexId> kept;
  for (std::size_t i = 0; i < n_; ++i) {
    if (keep[i]) kept.push_back(static_cast<VertexId>(i));
  }
  WeightMatrix out(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const auto src = row(kept[i]);
    for (std::size_t j = 0; j < kept.size(); ++j) {
      out.data_[i * kept.size() + j] = src[static_cast<std::size_t>(kept[j])];
    }
  }
  return out;
}

GtspInstance::GtspInstance(std::string name, WeightMatrix weights,
                           std::vector<std::vector<VertexId>> clusters,
                           std::optional<Coordinates> coords)
    : name_(std::move(name)),
      weights_(std::move(weights)),
      clusters_(std::move(clusters)),
      coords_(std::move(coords)) {
  for (auto& c : clusters_) std::sort(c.begin(), c.end());
  rebuild_cluster_index();
}

GtspInstance GtspInstance::make(std::string name, WeightMatrix weights,
                                std::vector<std::vector<VertexId>> clusters,
                                std::optional<Coordinates> coords) {
  GtspInstance instance(std::move(name), std::move(weights), std::move(clusters),
                        std::move(coords));
  if (auto violations = validate(instance); !violations.empty()) {
    throw ContractViolation("invalid instance: " + violations.front().detail);
  }
  return instance;
}

void GtspInstance::rebuild_cluster_index() {
  cluster_of_.assign(weights_.size(), -1);
  for (std::size_t c = 0; c < clusters_.size(); ++c) {
    for (VertexId v : clusters_[c]) {
      if (v >= 0 && static_cast<std::size_t>(v) < cluster_of_.size() &&
          cluster_of_[static_cast<std::size_t>(v)] < 0) {
        cluster_of_[static_cast<std::size_t>(v)] = static_cast<ClusterId>(c);
      }
    }
  }
}

std::uint64_t GtspInstance::inter_cluster_pairs() const {
  const auto n = static_cast<std::uint64_t>(this->n());
  std::uint64_t same = 0;
  for (const auto& c : clusters_) {
    const auto k = static_cast<std::uint64_t>(c.size());
    same += k * (k - (k > 0 ? 1 : 0)) / 2;
  }
  return n * (n - (n > 0 ? 1 : 0)) / 2 - same;
}

void GtspInstance::set_edge_infinite(VertexId u, VertexId v) {
  if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n() ||
      static_cast<std::size_t>(v) >= n()) {
    throw ContractViolation("set_edge_infinite: vertex out of range");
  }
  if (cluster_of(u) == cluster_of(v)) {
    throw ContractViolation("set_edge_infinite: vertices " + std::to_string(u) + " and " +
                            std::to_string(v) + " share cluster " +
                            std::to_string(cluster_of(u)));
  }
  weights_.set_symmetric(u, v, Weight::infinity());
}

void GtspInstance::remove_vertices(const std::vector<bool>& doomed) {
  std::vector<bool> keep(n());
  std::vector<VertexId> renumber(n(), -1);
  VertexId next = 0;
  for (std::size_t v = 0; v < n(); ++v) {
    keep[v] = !doomed[v];
    if (keep[v]) renumber[v] = next++;
  }
  weights_ = weights_.compacted(keep);
  for (auto& c : clusters_) {
    std::vector<VertexId> survivors;
    survivors.reserve(c.size());
    for (VertexId v : c) {
      if (keep[static_cast<std::size_t>(v)]) survivors.push_back(renumber[static_cast<std::size_t>(v)]);
    }
    c = std::move(survivors);
  }
  if (coords_) {
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(next));
    for (std::size_t v = 0; v < keep.size(); ++v) {
      if (keep[v]) pts.push_back(coords_->points[v]);
    }
    coords_->points = std::move(pts);
  }
  rebuild_cluster_index();
}

IdMap::IdMap(std::size_t n) : current_to_original_(n), original_to_current_(n) {
  for (std::size_t i = 0; i < n; ++i) {
    current_to_original_[i] = static_cast<VertexId>(i);
    original_to_current_[i] = static_cast<VertexId>(i);
  }
}

std::optional<VertexId> IdMap::current_of(VertexId original) const {
  if (original < 0 || static_cast<std::size_t>(original) >= original_to_current_.size()) {
    return std::nullopt;
  }
  const VertexId c = original_to_current_[static_cast<std::size_t>(original)];
  if (c < 0) return std::nullopt;
  return c;
}

void IdMap::erase(const std::vector<bool>& doomed) {
  std::vector<VertexId> survivors;
  survivors.reserve(current_to_original_.size());
  for (std::size_t c = 0; c < current_to_original_.size(); ++c) {
    const VertexId orig = current_to_original_[c];
    if (doomed[c]) {
      original_to_current_[static_cast<std::size_t>(orig)] = -1;
    } else {
      original_to_current_[static_cast<std::size_t>(orig)] = static_cast<VertexId>(survivors.size());
      survivors.push_back(orig);
    }
  }
  current_to_original_ = std::move(survivors);
}

void remove_vertices(GtspInstance& instance, const std::vector<VertexId>& vertices, IdMap& map) {
  if (map.current_size() != instance.n()) {
    throw ContractViolation("remove_vertices: id map does not match instance size");
  }
  std::vector<bool> doomed(instance.n(), false);
  std::vector<std::size_t> taken(instance.m(), 0);
  for (VertexId v : vertices) {
    if (v < 0 || static_cast<std::size_t>(v) >= instance.n()) {
      throw ContractViolation("remove_vertex: vertex " + std::to_string(v) + " out of range");
    }
    if (doomed[static_cast<std::size_t>(v)]) {
      throw ContractViolation("remove_vertex: vertex " + std::to_string(v) + " listed twice");
    }
    const ClusterId c = instance.cluster_of(v);
    if (++taken[static_cast<std::size_t>(c)] >= instance.cluster_size(c)) {
      throw ContractViolation("remove_vertex: removing vertex " + std::to_string(v) +
                              " would empty cluster " + std::to_string(c));
    }
    doomed[static_cast<std::size_t>(v)] = true;
  }
  instance.remove_vertices(doomed);
  map.erase(doomed);
}

void remove_vertex(GtspInstance& instance, VertexId v, IdMap& map) {
  remove_vertices(instance, {v}, map);
}

void remove_original_vertex(GtspInstance& instance, VertexId original, IdMap& map) {
  const auto current = map.current_of(original);
  if (!current) {
    throw ContractViolation("remove_vertex: original vertex " + std::to_string(original) +
                            " is not present");
  }
  remove_vertex(instance, *current, map);
}

void set_edge_infinite(GtspInstance& instance, VertexId u, VertexId v) {
  instance.set_edge_infinite(u, v);
}

std::vector<Violation> validate(const GtspInstance& instance) {
  using K = Violation::Kind;
  std::vector<Violation> out;
  const auto n = instance.n();

  std::vector<int> seen(n, 0);
  for (std::size_t c = 0; c < instance.m(); ++c) {
    const auto members = instance.cluster(static_cast<ClusterId>(c));
    if (members.empty()) {
      out.push_back({K::empty_cluster, "cluster " + std::to_string(c) + " is empty"});
    }
    for (VertexId v : members) {
      if (v < 0 || static_cast<std::size_t>(v) >= n) {
        out.push_back({K::vertex_out_of_range, "cluster " + std::to_string(c) +
                                                   " lists vertex " + std::to_string(v) +
                                                   " outside 0.." + std::to_string(n)});
        continue;
      }
      if (++seen[static_cast<std::size_t>(v)] == 2) {
        out.push_back({K::vertex_in_two_clusters,
                       "vertex " + std::to_string(v) + " appears in more than one cluster"});
      }
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (seen[v] == 0) {
      out.push_back({K::unassigned_vertex, "vertex " + std::to_string(v) + " is in no cluster"});
    }
  }

  const auto& w = instance.weights();
  for (std::size_t u = 0; u < n; ++u) {
    const auto uu = static_cast<VertexId>(u);
    if (w.at(uu, uu) != Weight(0)) {
      out.push_back({K::nonzero_diagonal, "weight (" + std::to_string(u) + "," +
                                              std::to_string(u) + ") is not zero"});
    }
    for (std::size_t v = 0; v < n; ++v) {
      const auto vv = static_cast<VertexId>(v);
      const Weight x = w.at(uu, vv);
      if (x.is_finite() && x.value() < 0) {
        out.push_back({K::negative_weight, "weight (" + std::to_string(u) + "," +
                                               std::to_string(v) + ") is negative"});
      } else if (x.is_finite() && x.value() > kMaxFiniteWeight) {
        out.push_back({K::weight_too_large, "weight (" + std::to_string(u) + "," +
                                                std::to_string(v) + ") exceeds the supported range"});
      }
      if (u < v && x != w.at(vv, uu)) {
        out.push_back({K::asymmetric, "weights (" + std::to_string(u) + "," + std::to_string(v) +
                                          ") and (" + std::to_string(v) + "," +
                                          std::to_string(u) + ") differ"});
      }
    }
  }

  if (const auto& coords = instance.coords(); coords && coords->points.size() != n) {
    out.push_back({K::coords_mismatch, "coordinate count differs from vertex count"});
  }
  return out;
}

}  // namespace gtsp
