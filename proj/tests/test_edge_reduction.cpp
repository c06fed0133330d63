#include <doctest.h>

#include <algorithm>
#include <set>

#include "gtsp/edge_reduction.hpp"
#include "gtsp/errors.hpp"
#include "gtsp/oracle.hpp"
#include "helpers.hpp"

using namespace gtsp;
using namespace gtsp::testing;

namespace {

std::vector<VertexId> brute_for_anchor(const GtspInstance& g, VertexId v) {
  std::vector<VertexId> out;
  for (VertexId u = 0; u < static_cast<VertexId>(g.n()); ++u) {
    if (g.cluster_of(u) == g.cluster_of(v) || g.dist(u, v).is_infinite()) continue;
    if (brute_edge_redundant(g, u, v)) out.push_back(u);
  }
  return out;
}

bool symmetric(const GtspInstance& g) {
  for (VertexId u = 0; u < static_cast<VertexId>(g.n()); ++u) {
    for (VertexId v = 0; v < static_cast<VertexId>(g.n()); ++v) {
      if (g.dist(u, v) != g.dist(v, u)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("scan state holds sorted differences against the lowest other mate") {
  const GtspInstance g = table_fixture();
  const EdgeScanState s = build_edge_scan_state(g, 2);
  CHECK(s.anchor == 2);
  CHECK(s.pivot == 0);
  REQUIRE(s.p_entries.size() == 5);
  for (std::size_t i = 1; i < s.p_entries.size(); ++i) {
    CHECK(s.p_entries[i - 1].delta <= s.p_entries[i].delta);
  }
  // dist(x, 2) - dist(x, 0) = (10 - row2) - 10.
  CHECK(s.p_entries.front().delta == -2);
  CHECK(s.p_entries.front().x == 7);
  CHECK(s.p_entries.back().delta == 2);
  CHECK(s.p_entries.back().x == 4);
  CHECK(build_edge_scan_state(g, 0).pivot == 1);
}

TEST_CASE("a pointwise dominating mate makes every edge into the anchor redundant") {
  // Cluster 0 = {0, 1}; vertex 1 is closer than 0 to everything.
  GtspInstance g = from_rows({{0, 1, 8, 8, 8, 8},
                              {1, 0, 3, 3, 3, 3},
                              {8, 3, 0, 5, 5, 5},
                              {8, 3, 5, 0, 5, 5},
                              {8, 3, 5, 5, 0, 5},
                              {8, 3, 5, 5, 5, 0}},
                             {{0, 1}, {2, 3}, {4, 5}});
  CHECK(redundant_edges_for_anchor(g, 0) == std::vector<VertexId>{2, 3, 4, 5});
  CHECK(brute_for_anchor(g, 0) == std::vector<VertexId>{2, 3, 4, 5});
  const auto marked = reduce_edges_for_anchor(g, 0);
  CHECK(marked.size() == 4);
  for (VertexId u = 2; u < 6; ++u) CHECK(g.dist(0, u).is_infinite());
  CHECK(symmetric(g));
}

TEST_CASE("sorted scan stops before the first entry when it is already non-negative") {
  // Anchor 0, pivot 1. The smallest P entry is 0 (x = 2) and delta_u for
  // u = 2 is 0, so the scan for u = 2 inspects no x at all.
  const GtspInstance g = from_rows({{0, 1, 6, 6, 6},
                                    {1, 0, 6, 2, 2},
                                    {6, 6, 0, 5, 5},
                                    {6, 2, 5, 0, 5},
                                    {6, 2, 5, 5, 0}},
                                   {{0, 1}, {2}, {3, 4}});
  const EdgeScanState s = build_edge_scan_state(g, 0);
  const Delta delta_u = delta_of(g.dist(2, 0), g.dist(2, 1));
  CHECK(delta_u == 0);
  CHECK(s.p_entries.front().delta + delta_u >= 0);
  CHECK(redundant_edges_for_anchor(g, 0) == std::vector<VertexId>{2, 3, 4});
  CHECK(brute_edge_redundant(g, 2, 0));
}

TEST_CASE("m = 3 with a single outside vertex decides on that vertex alone") {
  // u = 2 (cluster 1), x = 3 (cluster 2), anchor 0 with mate 1.
  const GtspInstance kept = from_rows(
      {{0, 1, 1, 1}, {1, 0, 5, 5}, {1, 5, 0, 1}, {1, 5, 1, 0}}, {{0, 1}, {2}, {3}});
  CHECK_FALSE(brute_edge_redundant(kept, 2, 0));
  CHECK(redundant_edges_for_anchor(kept, 0).empty());
  const GtspInstance dropped = from_rows(
      {{0, 1, 4, 4}, {1, 0, 1, 1}, {4, 1, 0, 1}, {4, 1, 1, 0}}, {{0, 1}, {2}, {3}});
  CHECK(brute_edge_redundant(dropped, 2, 0));
  CHECK(redundant_edges_for_anchor(dropped, 0) == std::vector<VertexId>{2, 3});
}

TEST_CASE("random 20-vertex 5-cluster instances match brute force per anchor") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    GtspInstance g = random_instance(seed, 20, 5, 50, seed % 2 ? RandomMode::uniform : RandomMode::planar);
    for (ClusterId c = 0; c < 5; ++c) {
      if (g.cluster_size(c) < 2) continue;
      const std::vector<VertexId> anchors(g.cluster(c).begin(), g.cluster(c).end());
      for (VertexId v : anchors) {
        const auto expected = brute_for_anchor(g, v);
        REQUIRE_MESSAGE(redundant_edges_for_anchor(g, v) == expected, "seed " << seed << " anchor " << v);
        CHECK(redundant_edges_for_anchor(g, v, {.sorted_scan = false}) == expected);
        CHECK(redundant_edges_for_anchor(g, v, {.execution = Execution::parallel}) == expected);
        reduce_edges_for_anchor(g, v);
      }
    }
    CHECK(symmetric(g));
  }
}

TEST_CASE("dropping the own-cluster guard is caught by the oracle") {
  bool caught = false;
  for (std::uint64_t seed = 1; seed <= 20 && !caught; ++seed) {
    const GtspInstance g = random_instance(seed, 20, 4, 50);
    for (VertexId v = 0; v < 20 && !caught; ++v) {
      if (g.cluster_size(g.cluster_of(v)) < 2) continue;
      caught = redundant_edges_for_anchor(g, v, {.skip_foreign_cluster_guard = true}) !=
               brute_for_anchor(g, v);
    }
  }
  CHECK(caught);
}

TEST_CASE("reduce_edges reports original ids and the pair denominator") {
  GtspInstance g = random_instance(11, 24, 5, 100, RandomMode::planar);
  const std::uint64_t pairs = g.inter_cluster_pairs();
  IdMap map(g.n());
  const auto result = reduce_edges(g, map);
  CHECK(result.pairs_at_entry == pairs);
  CHECK(result.removed_pct() >= 0.0);
  CHECK(result.removed_pct() <= 100.0);
  std::set<Edge> unique(result.removed_edges.begin(), result.removed_edges.end());
  CHECK(unique.size() == result.removed_edges.size());
  for (const auto& [a, b] : result.removed_edges) {
    CHECK(a < b);
    const auto ca = map.current_of(a), cb = map.current_of(b);
    if (ca && cb) CHECK(g.dist(*ca, *cb).is_infinite());
  }
  CHECK(symmetric(g));
  CHECK(validate(g).empty());

  GtspInstance serial = random_instance(11, 24, 5, 100, RandomMode::planar), parallel = serial;
  IdMap ms(serial.n()), mp(parallel.n());
  const auto rs = reduce_edges(serial, ms);
  const auto rp = reduce_edges(parallel, mp, {.execution = Execution::parallel});
  CHECK(rs.removed_edges == rp.removed_edges);
  CHECK(rs.strip.removed == rp.strip.removed);
  CHECK(serial == parallel);
}

TEST_CASE("edge reduction edge cases") {
  SUBCASE("all clusters singleton") {
    GtspInstance g = as_singletons(load_tsp("gr17.tsp"));
    IdMap map(g.n());
    const auto result = reduce_edges(g, map);
    CHECK(result.removed_edges.empty());
    CHECK(result.strip.removed.empty());
  }
  SUBCASE("fewer than three clusters") {
    GtspInstance g = from_rows({{0, 1, 2}, {1, 0, 2}, {2, 2, 0}}, {{0, 1}, {2}});
    IdMap map(g.n());
    CHECK(reduce_edges(g, map).skipped_small_m);
    CHECK_THROWS_AS(redundant_edges_for_anchor(g, 0), ContractViolation);
  }
  SUBCASE("anchor alone in its cluster") {
    const GtspInstance g = table_fixture();
    const GtspInstance h = from_rows({{0, 1, 2, 2}, {1, 0, 2, 2}, {2, 2, 0, 2}, {2, 2, 2, 0}},
                               {{0, 1}, {2}, {3}});
    CHECK_THROWS_AS(redundant_edges_for_anchor(h, 2), ContractViolation);
    CHECK_NOTHROW(redundant_edges_for_anchor(g, 3));
  }
  SUBCASE("infinite edges are skipped") {
    GtspInstance g = table_fixture();
    set_edge_infinite(g, 3, 0);
    const auto found = redundant_edges_for_anchor(g, 0);
    CHECK(std::find(found.begin(), found.end(), 3) == found.end());
  }
}

TEST_CASE("isolated-vertex sweep") {
  // Clusters {0,1,2}, {3,4}, {5,6}, {7}; all weights 1 unless noted.
  auto base = [] {
    WeightMatrix w(8, Weight(1));
    for (VertexId v = 0; v < 8; ++v) w.set(v, v, Weight(0));
    return GtspInstance::make("sweep", w, {{0, 1, 2}, {3, 4}, {5, 6}, {7}});
  };

  SUBCASE("vertex with no finite edges is removed") {
    GtspInstance g = base();
    for (VertexId x = 3; x < 8; ++x) set_edge_infinite(g, 0, x);
    IdMap map(g.n());
    const auto r = strip_isolated_vertices(g, map);
    CHECK(r.removed == std::vector<VertexId>{0});
    CHECK(r.infeasible.empty());
    CHECK(g.n() == 7);
  }
  SUBCASE("vertex reaching one other cluster is removed") {
    GtspInstance g = base();
    for (VertexId x : {3, 4, 5, 6}) set_edge_infinite(g, 1, x);  // only cluster 3 left
    IdMap map(g.n());
    CHECK(strip_isolated_vertices(g, map).removed == std::vector<VertexId>{1});
  }
  SUBCASE("removals cascade to a fixed point") {
    GtspInstance g = base();
    // 3 reaches only cluster 0. 2 reaches cluster 1 only through 3, plus cluster 2.
    for (VertexId x : {5, 6, 7}) set_edge_infinite(g, 3, x);
    for (VertexId x : {4, 7}) set_edge_infinite(g, 2, x);
    IdMap map(g.n());
    const auto r = strip_isolated_vertices(g, map);
    CHECK(r.removed == std::vector<VertexId>{3, 2});
    CHECK(validate(g).empty());
    // Fixed point: no vertex of a multi-vertex cluster reaches fewer than two clusters.
    for (VertexId v = 0; v < static_cast<VertexId>(g.n()); ++v) {
      if (g.cluster_size(g.cluster_of(v)) < 2) continue;
      std::set<ClusterId> reached;
      for (VertexId w = 0; w < static_cast<VertexId>(g.n()); ++w) {
        if (g.cluster_of(w) != g.cluster_of(v) && g.dist(v, w).is_finite()) reached.insert(g.cluster_of(w));
      }
      CHECK(reached.size() >= 2);
    }
  }
  SUBCASE("a qualifying singleton is reported, not removed") {
    GtspInstance g = base();
    for (VertexId x : {0, 1, 2, 3, 4}) set_edge_infinite(g, 7, x);  // reaches only cluster 2
    IdMap map(g.n());
    const auto r = strip_isolated_vertices(g, map);
    CHECK(r.infeasible == std::vector<VertexId>{7});
    CHECK(g.n() == 8);
  }
}
