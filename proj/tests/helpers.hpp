#pragma once

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <string>
#include <vector>

#include "gtsp/instance.hpp"
#include "gtsp/oracle.hpp"
#include "gtsp/tsplib_io.hpp"

namespace gtsp::testing {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(GTSP_DATA_DIR) / "tsplib" / name;
}

inline TspInstance load_tsp(const std::string& name) {
  return parse_tsp(read_text_file(data_path(name)));
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  auto dir = std::filesystem::temp_directory_path() /
             ("gtsp-test-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

/// Symmetric instance from a full matrix given row by row; -1 means INFINITY.
inline GtspInstance from_rows(const std::vector<std::vector<std::int64_t>>& rows,
                              std::vector<std::vector<VertexId>> clusters) {
  WeightMatrix w(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) {
      const auto v = rows[i][j];
      w.set(static_cast<VertexId>(i), static_cast<VertexId>(j), v < 0 ? Weight::infinity() : Weight(v));
    }
  }
  return GtspInstance::make("rows", std::move(w), std::move(clusters));
}

/// Differences-table example with candidate r = 0 and cluster-mates 1, 2 in
/// cluster 0; cluster 1 = {3, 4, 5}, cluster 2 = {6, 7}. Distances from r
/// are 10 and dist(x, s) = 10 - delta, so the table rows are
///   s=1: [ 2,  0, -1 | -3, 4]
///   s=2: [-1, -2, -1 |  1, 2]
inline GtspInstance table_fixture() {
  const std::vector<std::vector<std::int64_t>> deltas{{2, 0, -1, -3, 4}, {-1, -2, -1, 1, 2}};
  WeightMatrix w(8, Weight(10));
  for (VertexId v = 0; v < 8; ++v) w.set(v, v, Weight(0));
  for (VertexId s = 1; s <= 2; ++s) {
    for (VertexId x = 3; x < 8; ++x) {
      w.set_symmetric(x, s, Weight(10 - deltas[static_cast<std::size_t>(s - 1)][static_cast<std::size_t>(x - 3)]));
    }
  }
  return GtspInstance::make("table", std::move(w), {{0, 1, 2}, {3, 4, 5}, {6, 7}});
}

/// Held-Karp over cluster subsets; independent of exact_solve's order
/// enumeration. Returns INFINITY when no finite tour exists.
inline Weight held_karp(const GtspInstance& in) {
  const std::size_t m = in.m();
  const std::size_t n = in.n();
  const std::size_t full = std::size_t{1} << m;
  Weight best = Weight::infinity();
  std::vector<Weight> dp(full * n);
  for (VertexId start : in.cluster(0)) {
    std::fill(dp.begin(), dp.end(), Weight::infinity());
    dp[1 * n + static_cast<std::size_t>(start)] = Weight(0);
    for (std::size_t mask = 1; mask < full; mask += 2) {
      for (std::size_t v = 0; v < n; ++v) {
        const Weight here = dp[mask * n + v];
        if (here.is_infinite()) continue;
        for (std::size_t w = 0; w < n; ++w) {
          const auto cw = static_cast<std::size_t>(in.cluster_of(static_cast<VertexId>(w)));
          if (mask & (std::size_t{1} << cw)) continue;
          const std::size_t next = mask | (std::size_t{1} << cw);
          const Weight cand = here + in.dist(static_cast<VertexId>(v), static_cast<VertexId>(w));
          if (cand < dp[next * n + w]) dp[next * n + w] = cand;
        }
      }
    }
    for (std::size_t v = 0; v < n; ++v) {
      const Weight closed = dp[(full - 1) * n + v] + in.dist(static_cast<VertexId>(v), start);
      if (closed < best) best = closed;
    }
  }
  return best;
}

/// Every vertex its own cluster, cluster order = vertex order.
inline GtspInstance as_singletons(const TspInstance& tsp) {
  std::vector<std::vector<VertexId>> clusters;
  for (std::size_t v = 0; v < tsp.n(); ++v) clusters.push_back({static_cast<VertexId>(v)});
  return GtspInstance::make(tsp.name, tsp.weights, std::move(clusters), tsp.coords);
}

}  // namespace gtsp::testing
