#include "gtsp/report.hpp"

#include <algorithm>

#include <json.hpp>

#include "gtsp/errors.hpp"
#include "gtsp/vertex_reduction.hpp"

namespace gtsp {

using json = nlohmann::ordered_json;

const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::vertex: return "vertex";
    case Mode::edge: return "edge";
    case Mode::combined: return "combined";
  }
  return "?";
}

std::optional<Mode> parse_mode(std::string_view text) {
  if (text == "vertex") return Mode::vertex;
  if (text == "edge") return Mode::edge;
  if (text == "combined") return Mode::combined;
  return std::nullopt;
}

std::string report_to_json(const ReductionReport& r) {
  json ids = json::array();
  for (VertexId v : r.vertices_removed) ids.push_back(v + 1);
  json edges = json::array();
  for (const auto& [a, b] : r.edges_removed) edges.push_back(json::array({a + 1, b + 1}));
  json infeasible = json::array();
  for (VertexId v : r.infeasible_vertices) infeasible.push_back(v + 1);

  json j;
  j["instance_name"] = r.instance_name;
  j["mode"] = to_string(r.mode);
  j["n_before"] = r.n_before;
  j["m"] = r.m;
  j["vertices_removed"] = std::move(ids);
  j["edges_removed"] = std::move(edges);
  j["r_v_pct"] = r.r_v_pct;
  j["r_e_pct"] = r.r_e_pct;
  j["removed_by_vertex_pass"] = r.removed_by_vertex_pass;
  j["removed_by_strip"] = r.removed_by_strip;
  j["edge_pairs_at_entry"] = r.edge_pairs_at_entry;
  j["passes"] = {{"vertex_tests", r.vertex_tests},
                 {"vertex_early_exits", r.vertex_early_exits},
                 {"vertex_cycles", r.vertex_cycles}};
  j["infeasible_vertices"] = std::move(infeasible);
  j["skipped_small_m"] = r.skipped_small_m;
  j["time_ms"] = r.time_ms;
  return j.dump(2) + "\n";
}

ReductionReport report_from_json(std::string_view text) {
  ReductionReport r;
  try {
    const json j = json::parse(text);
    r.instance_name = j.at("instance_name").get<std::string>();
    const auto mode = parse_mode(j.at("mode").get<std::string>());
    if (!mode) throw ContractViolation("report: unknown mode");
    r.mode = *mode;
    r.n_before = j.at("n_before").get<std::uint64_t>();
    r.m = j.at("m").get<std::uint64_t>();
    for (const auto& v : j.at("vertices_removed")) r.vertices_removed.push_back(v.get<VertexId>() - 1);
    for (const auto& e : j.at("edges_removed")) {
      r.edges_removed.emplace_back(e.at(0).get<VertexId>() - 1, e.at(1).get<VertexId>() - 1);
    }
    r.r_v_pct = j.at("r_v_pct").get<double>();
    r.r_e_pct = j.at("r_e_pct").get<double>();
    r.removed_by_vertex_pass = j.at("removed_by_vertex_pass").get<std::uint64_t>();
    r.removed_by_strip = j.at("removed_by_strip").get<std::uint64_t>();
    r.edge_pairs_at_entry = j.at("edge_pairs_at_entry").get<std::uint64_t>();
    const auto& passes = j.at("passes");
    r.vertex_tests = passes.at("vertex_tests").get<std::uint64_t>();
    r.vertex_early_exits = passes.at("vertex_early_exits").get<std::uint64_t>();
    r.vertex_cycles = passes.at("vertex_cycles").get<std::uint64_t>();
    for (const auto& v : j.at("infeasible_vertices")) r.infeasible_vertices.push_back(v.get<VertexId>() - 1);
    r.skipped_small_m = j.at("skipped_small_m").get<bool>();
    r.time_ms = j.at("time_ms").get<double>();
  } catch (const json::exception& e) {
    throw ContractViolation(std::string("report: ") + e.what());
  }
  return r;
}

ReductionReport run_reduction(GtspInstance& instance, IdMap& map, Mode mode, Execution execution) {
  ReductionReport r;
  r.instance_name = instance.name();
  r.mode = mode;
  r.n_before = instance.n();
  r.m = instance.m();

  if (mode == Mode::vertex || mode == Mode::combined) {
    const VertexReductionResult v = reduce_vertices(instance, map, {.execution = execution});
    r.vertices_removed = v.removed;
    r.removed_by_vertex_pass = v.removed.size();
    r.vertex_tests = v.tests;
    r.vertex_early_exits = v.early_exits;
    r.vertex_cycles = v.cycles;
    r.skipped_small_m = v.skipped_small_m;
    r.time_ms += v.time_ms;
  }
  if (mode == Mode::edge || mode == Mode::combined) {
    const EdgeReductionResult e = reduce_edges(instance, map, {.execution = execution});
    r.edges_removed = e.removed_edges;
    r.edge_pairs_at_entry = e.pairs_at_entry;
    r.r_e_pct = e.removed_pct();
    r.vertices_removed.insert(r.vertices_removed.end(), e.strip.removed.begin(), e.strip.removed.end());
    r.removed_by_strip = e.strip.removed.size();
    r.infeasible_vertices = e.strip.infeasible;
    r.skipped_small_m = r.skipped_small_m || e.skipped_small_m;
    r.time_ms += e.time_ms;
  }

  std::sort(r.vertices_removed.begin(), r.vertices_removed.end());
  std::sort(r.edges_removed.begin(), r.edges_removed.end());
  std::sort(r.infeasible_vertices.begin(), r.infeasible_vertices.end());
  r.r_v_pct = r.n_before == 0 ? 0.0
                              : 100.0 * static_cast<double>(r.vertices_removed.size()) /
                                    static_cast<double>(r.n_before);
  return r;
}

std::string idmap_to_json(const IdMap& map) {
  json ids = json::array();
  for (VertexId v : map.current_to_original()) ids.push_back(v + 1);
  json j;
  j["original_size"] = map.original_size();
  j["current_to_original"] = std::move(ids);
  return j.dump(2) + "\n";
}

}  // namespace gtsp
