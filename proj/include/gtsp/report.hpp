#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gtsp/edge_reduction.hpp"
#include "gtsp/execution.hpp"
#include "gtsp/instance.hpp"

namespace gtsp {

enum class Mode { vertex, edge, combined };

const char* to_string(Mode mode);
std::optional<Mode> parse_mode(std::string_view text);

/// Outcome of one reduction pipeline. Vertex ids are original ids; lists are
/// sorted. In JSON all ids are 1-based.
struct ReductionReport {
  std::string instance_name;
  Mode mode = Mode::vertex;
  std::uint64_t n_before = 0;
  std::uint64_t m = 0;
  std::vector<VertexId> vertices_removed;
  std::vector<Edge> edges_removed;
  double r_v_pct = 0.0;
  double r_e_pct = 0.0;

  // Where the removed vertices came from.
  std::uint64_t removed_by_vertex_pass = 0;
  std::uint64_t removed_by_strip = 0;
  // Inter-cluster pairs when the edge phase started (r_e_pct denominator).
  std::uint64_t edge_pairs_at_entry = 0;

  std::uint64_t vertex_tests = 0;
  std::uint64_t vertex_early_exits = 0;
  std::uint64_t vertex_cycles = 0;

  std::vector<VertexId> infeasible_vertices;
  bool skipped_small_m = false;
  double time_ms = 0.0;

  friend bool operator==(const ReductionReport&, const ReductionReport&) = default;
};

std::string report_to_json(const ReductionReport& report);
ReductionReport report_from_json(std::string_view text);

/// vertex: reduce_vertices. edge: reduce_edges (which ends with the
/// isolated-vertex sweep). combined: both, in that order. `time_ms` covers
/// the reduction calls only.
ReductionReport run_reduction(GtspInstance& instance, IdMap& map, Mode mode,
                              Execution execution = Execution::serial);

/// IdMap sidecar: maps each current id to its original id (both 1-based).
std::string idmap_to_json(const IdMap& map);

}  // namespace gtsp
