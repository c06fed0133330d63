#include "gtsp/tsplib_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "gtsp/errors.hpp"

namespace gtsp {

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::malformed_header: return "malformed header";
    case ParseErrorKind::dimension_mismatch: return "dimension mismatch";
    case ParseErrorKind::cluster_membership: return "cluster membership";
    case ParseErrorKind::negative_weight: return "negative weight";
    case ParseErrorKind::asymmetric_matrix: return "asymmetric matrix";
    case ParseErrorKind::unsupported_format: return "unsupported format";
    case ParseErrorKind::malformed_data: return "malformed data";
  }
  return "parse error";
}

ParseError::ParseError(ParseErrorKind kind, std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + to_string(kind) + ": " + what),
      kind_(kind),
      line_(line) {}

namespace {

using K = ParseErrorKind;

struct Token {
  std::string_view text;
  std::size_t line;
};

enum class Section { none, node_coord, edge_weight, gtsp_set, display_data };

enum class MatrixFormat { full_matrix, lower_diag_row, upper_diag_row, lower_row, upper_row };

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

void split_tokens(std::string_view line, std::size_t line_no, std::vector<Token>& out) {
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back({line.substr(start, i - start), line_no});
  }
}

std::int64_t to_int(const Token& t) {
  std::int64_t v = 0;
  auto text = t.text;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(K::malformed_data, t.line, "expected an integer, got '" + std::string(t.text) + "'");
  }
  return v;
}

double to_double(const Token& t) {
  double v = 0;
  auto text = t.text;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(K::malformed_data, t.line, "expected a number, got '" + std::string(t.text) + "'");
  }
  return v;
}

bool starts_numeric(std::string_view s) {
  if (s.empty()) return false;
  const char c = s.front();
  return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.';
}

/// Everything a TSPLIB file can say, before interpretation.
struct RawFile {
  std::string name;
  std::string type;
  std::vector<std::string> comments;
  std::optional<std::size_t> dimension;
  std::optional<std::size_t> gtsp_sets;
  std::string edge_weight_type;
  std::string edge_weight_format;
  std::size_t header_line = 0;
  std::size_t end_line = 0;
  std::vector<Token> node_coords;
  std::size_t node_coord_end = 0;
  std::vector<Token> edge_weights;
  std::size_t edge_weight_end = 0;
  std::vector<Token> gtsp_sets_data;
  std::size_t gtsp_set_end = 0;
  bool has_node_coords = false;
  bool has_edge_weights = false;
  bool has_gtsp_sets = false;
};

std::size_t parse_count(std::string_view value, std::size_t line, const char* key) {
  const Token t{trim(value), line};
  std::int64_t v = 0;
  try {
    v = to_int(t);
  } catch (const ParseError&) {
    throw ParseError(K::malformed_header, line, std::string(key) + " must be a positive integer");
  }
  if (v <= 0) throw ParseError(K::malformed_header, line, std::string(key) + " must be positive");
  return static_cast<std::size_t>(v);
}

RawFile scan(std::string_view text) {
  RawFile raw;
  Section section = Section::none;
  std::size_t line_no = 0;
  bool saw_eof = false;

  auto close_section = [&](std::size_t at) {
    switch (section) {
      case Section::node_coord: raw.node_coord_end = at; break;
      case Section::edge_weight: raw.edge_weight_end = at; break;
      case Section::gtsp_set: raw.gtsp_set_end = at; break;
      default: break;
    }
    section = Section::none;
  };

  std::size_t pos = 0;
  while (pos <= text.size() && !saw_eof) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

    const std::string_view body = trim(line);
    if (body.empty()) continue;

    if (section != Section::none && starts_numeric(body)) {
      if (section == Section::display_data) continue;
      auto& sink = section == Section::node_coord    ? raw.node_coords
                   : section == Section::edge_weight ? raw.edge_weights
                                                     : raw.gtsp_sets_data;
      split_tokens(body, line_no, sink);
      continue;
    }
    close_section(line_no);

    const auto colon = body.find(':');
    const std::string key = upper(trim(body.substr(0, colon)));
    const std::string_view value =
        colon == std::string_view::npos ? std::string_view{} : trim(body.substr(colon + 1));

    if (key == "EOF") {
      saw_eof = true;
      raw.end_line = line_no;
    } else if (key == "NODE_COORD_SECTION") {
      section = Section::node_coord;
      raw.has_node_coords = true;
    } else if (key == "EDGE_WEIGHT_SECTION") {
      section = Section::edge_weight;
      raw.has_edge_weights = true;
    } else if (key == "GTSP_SET_SECTION") {
      section = Section::gtsp_set;
      raw.has_gtsp_sets = true;
    } else if (key == "DISPLAY_DATA_SECTION") {
      section = Section::display_data;
    } else if (colon == std::string_view::npos) {
      throw ParseError(K::malformed_header, line_no,
                       "expected 'KEY: value', got '" + std::string(body) + "'");
    } else if (key == "NAME") {
      raw.name = std::string(value);
    } else if (key == "TYPE") {
      raw.type = upper(value);
    } else if (key == "COMMENT") {
      raw.comments.emplace_back(value);
    } else if (key == "DIMENSION") {
      raw.dimension = parse_count(value, line_no, "DIMENSION");
      raw.header_line = line_no;
    } else if (key == "GTSP_SETS") {
      raw.gtsp_sets = parse_count(value, line_no, "GTSP_SETS");
    } else if (key == "EDGE_WEIGHT_TYPE") {
      raw.edge_weight_type = upper(value);
    } else if (key == "EDGE_WEIGHT_FORMAT") {
      raw.edge_weight_format = upper(value);
    } else if (key == "DISPLAY_DATA_TYPE" || key == "NODE_COORD_TYPE") {
      // informational only
    } else {
      throw ParseError(K::malformed_header, line_no, "unknown keyword '" + key + "'");
    }
  }
  if (!saw_eof) {
    close_section(line_no);
    raw.end_line = line_no;
  }
  return raw;
}

MatrixFormat matrix_format(const RawFile& raw) {
  const auto& f = raw.edge_weight_format;
  if (f.empty() || f == "FULL_MATRIX") return MatrixFormat::full_matrix;
  if (f == "LOWER_DIAG_ROW") return MatrixFormat::lower_diag_row;
  if (f == "UPPER_DIAG_ROW") return MatrixFormat::upper_diag_row;
  if (f == "LOWER_ROW") return MatrixFormat::lower_row;
  if (f == "UPPER_ROW") return MatrixFormat::upper_row;
  throw ParseError(K::unsupported_format, raw.header_line, "EDGE_WEIGHT_FORMAT " + f);
}

std::optional<std::int64_t> sentinel_from_comments(const RawFile& raw) {
  constexpr std::string_view kKey = "INFINITY_SENTINEL:";
  for (const auto& c : raw.comments) {
    const auto at = c.find(kKey);
    if (at == std::string::npos) continue;
    const auto value = trim(std::string_view(c).substr(at + kKey.size()));
    return to_int(Token{value, raw.header_line});
  }
  return std::nullopt;
}

WeightMatrix read_explicit(const RawFile& raw, std::size_t n) {
  if (!raw.has_edge_weights) {
    throw ParseError(K::malformed_data, raw.end_line, "EXPLICIT instance without EDGE_WEIGHT_SECTION");
  }
  const MatrixFormat format = matrix_format(raw);
  const auto sentinel = sentinel_from_comments(raw);

  std::size_t expected = 0;
  switch (format) {
    case MatrixFormat::full_matrix: expected = n * n; break;
    case MatrixFormat::lower_diag_row:
    case MatrixFormat::upper_diag_row: expected = n * (n + 1) / 2; break;
    case MatrixFormat::lower_row:
    case MatrixFormat::upper_row: expected = n * (n - 1) / 2; break;
  }
  const auto& tokens = raw.edge_weights;
  if (tokens.size() != expected) {
    throw ParseError(K::dimension_mismatch,
                     tokens.size() > expected ? tokens[expected].line : raw.edge_weight_end,
                     "EDGE_WEIGHT_SECTION has " + std::to_string(tokens.size()) +
                         " entries, DIMENSION " + std::to_string(n) + " requires " +
                         std::to_string(expected));
  }

  WeightMatrix w(n);
  std::size_t k = 0;
  auto take = [&](std::size_t i, std::size_t j) {
    const Token& t = tokens[k++];
    const std::int64_t value = to_int(t);
    if (i == j) return;
    Weight weight;
    if (sentinel && value == *sentinel) {
      weight = Weight::infinity();
    } else if (value < 0) {
      throw ParseError(K::negative_weight, t.line,
                       "weight " + std::to_string(value) + " between vertices " +
                           std::to_string(i + 1) + " and " + std::to_string(j + 1));
    } else if (value > kMaxFiniteWeight) {
      throw ParseError(K::malformed_data, t.line, "weight " + std::to_string(value) + " too large");
    } else {
      weight = Weight(value);
    }
    const auto u = static_cast<VertexId>(i), v = static_cast<VertexId>(j);
    if (format == MatrixFormat::full_matrix) {
      w.set(u, v, weight);
      if (j < i && w.at(v, u) != weight) {
        throw ParseError(K::asymmetric_matrix, t.line,
                         "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                             ") differs from (" + std::to_string(j + 1) + "," +
                             std::to_string(i + 1) + ")");
      }
    } else {
      w.set_symmetric(u, v, weight);
    }
  };

  for (std::size_t i = 0; i < n; ++i) {
    switch (format) {
      case MatrixFormat::full_matrix:
        for (std::size_t j = 0; j < n; ++j) take(i, j);
        break;
      case MatrixFormat::lower_diag_row:
        for (std::size_t j = 0; j <= i; ++j) take(i, j);
        break;
      case MatrixFormat::upper_diag_row:
        for (std::size_t j = i; j < n; ++j) take(i, j);
        break;
      case MatrixFormat::lower_row:
        for (std::size_t j = 0; j < i; ++j) take(i, j);
        break;
      case MatrixFormat::upper_row:
        for (std::size_t j = i + 1; j < n; ++j) take(i, j);
        break;
    }
  }
  return w;
}

Coordinates read_coordinates(const RawFile& raw, std::size_t n, EdgeWeightType type) {
  if (!raw.has_node_coords) {
    throw ParseError(K::malformed_data, raw.end_line, "coordinate instance without NODE_COORD_SECTION");
  }
  const auto& tokens = raw.node_coords;
  if (tokens.size() % 3 != 0 || tokens.size() / 3 != n) {
    const std::size_t line = tokens.size() > 3 * n ? tokens[3 * n].line : raw.node_coord_end;
    throw ParseError(K::dimension_mismatch, line,
                     "NODE_COORD_SECTION lists " + std::to_string(tokens.size() / 3) +
                         " nodes, DIMENSION is " + std::to_string(n));
  }
  Coordinates coords{type, std::vector<Point>(n)};
  std::vector<bool> seen(n, false);
  for (std::size_t k = 0; k < tokens.size(); k += 3) {
    const std::int64_t id = to_int(tokens[k]);
    if (id < 1 || static_cast<std::size_t>(id) > n || seen[static_cast<std::size_t>(id - 1)]) {
      throw ParseError(K::malformed_data, tokens[k].line,
                       "node id " + std::to_string(id) + " is out of range or repeated");
    }
    seen[static_cast<std::size_t>(id - 1)] = true;
    coords.points[static_cast<std::size_t>(id - 1)] = {to_double(tokens[k + 1]), to_double(tokens[k + 2])};
  }
  return coords;
}

TspInstance interpret(const RawFile& raw) {
  if (!raw.dimension) throw ParseError(K::malformed_header, raw.end_line, "missing DIMENSION");
  const std::size_t n = *raw.dimension;

  TspInstance out;
  out.name = raw.name;
  const auto& t = raw.edge_weight_type;
  if (t == "EXPLICIT") {
    out.weights = read_explicit(raw, n);
  } else if (t == "EUC_2D" || t == "GEO") {
    auto coords = read_coordinates(raw, n, t == "GEO" ? EdgeWeightType::geo : EdgeWeightType::euc_2d);
    out.weights = distance_matrix(coords);
    out.coords = std::move(coords);
  } else if (t.empty()) {
    throw ParseError(K::malformed_header, raw.end_line, "missing EDGE_WEIGHT_TYPE");
  } else {
    throw ParseError(K::unsupported_format, raw.header_line, "EDGE_WEIGHT_TYPE " + t);
  }
  return out;
}

std::vector<std::vector<VertexId>> read_sets(const RawFile& raw, std::size_t n) {
  if (!raw.gtsp_sets) throw ParseError(K::malformed_header, raw.end_line, "missing GTSP_SETS");
  if (!raw.has_gtsp_sets) {
    throw ParseError(K::malformed_data, raw.end_line, "missing GTSP_SET_SECTION");
  }
  const std::size_t m = *raw.gtsp_sets;
  std::vector<std::vector<VertexId>> sets(m);
  std::vector<bool> set_seen(m, false);
  std::vector<std::size_t> owner(n, 0);  // set id + 1

  const auto& tokens = raw.gtsp_sets_data;
  std::size_t k = 0;
  while (k < tokens.size()) {
    const Token& head = tokens[k++];
    const std::int64_t set_id = to_int(head);
    if (set_id < 1 || static_cast<std::size_t>(set_id) > m ||
        set_seen[static_cast<std::size_t>(set_id - 1)]) {
      throw ParseError(K::cluster_membership, head.line,
                       "set id " + std::to_string(set_id) + " is out of range or repeated");
    }
    set_seen[static_cast<std::size_t>(set_id - 1)] = true;
    bool terminated = false;
    while (k < tokens.size()) {
      const Token& t = tokens[k++];
      const std::int64_t v = to_int(t);
      if (v == -1) {
        terminated = true;
        break;
      }
      if (v < 1 || static_cast<std::size_t>(v) > n) {
        throw ParseError(K::dimension_mismatch, t.line,
                         "vertex " + std::to_string(v) + " outside 1.." + std::to_string(n));
      }
      auto& who = owner[static_cast<std::size_t>(v - 1)];
      if (who != 0) {
        throw ParseError(K::cluster_membership, t.line,
                         "vertex " + std::to_string(v) + " is in sets " + std::to_string(who) +
                             " and " + std::to_string(set_id));
      }
      who = static_cast<std::size_t>(set_id);
      sets[static_cast<std::size_t>(set_id - 1)].push_back(static_cast<VertexId>(v - 1));
    }
    if (!terminated) {
      throw ParseError(K::malformed_data, head.line,
                       "set " + std::to_string(set_id) + " is not terminated by -1");
    }
  }
  for (std::size_t s = 0; s < m; ++s) {
    if (!set_seen[s]) {
      throw ParseError(K::cluster_membership, raw.gtsp_set_end,
                       "GTSP_SETS is " + std::to_string(m) + " but set " + std::to_string(s + 1) +
                           " is missing");
    }
    if (sets[s].empty()) {
      throw ParseError(K::cluster_membership, raw.gtsp_set_end,
                       "set " + std::to_string(s + 1) + " is empty");
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (owner[v] == 0) {
      throw ParseError(K::cluster_membership, raw.gtsp_set_end,
                       "vertex " + std::to_string(v + 1) + " is in no set");
    }
  }
  return sets;
}

void append_number(std::string& out, double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  out.append(buf, ptr);
}

void append_sets(std::string& out, const GtspInstance& instance) {
  out += "GTSP_SET_SECTION\n";
  for (std::size_t c = 0; c < instance.m(); ++c) {
    out += std::to_string(c + 1);
    for (VertexId v : instance.cluster(static_cast<ClusterId>(c))) {
      out += ' ';
      out += std::to_string(v + 1);
    }
    out += " -1\n";
  }
  out += "EOF\n";
}

}  // namespace

TspInstance parse_tsp(std::string_view text) {
  const RawFile raw = scan(text);
  if (raw.type != "TSP" && raw.type != "GTSP") {
    throw ParseError(K::malformed_header, raw.header_line,
                     raw.type.empty() ? "missing TYPE" : "unsupported TYPE " + raw.type);
  }
  return interpret(raw);
}

GtspInstance parse_gtsp(std::string_view text) {
  const RawFile raw = scan(text);
  if (raw.type != "GTSP" && raw.type != "AGTSP") {
    throw ParseError(K::malformed_header, raw.header_line,
                     raw.type.empty() ? "missing TYPE" : "expected TYPE: GTSP, got " + raw.type);
  }
  if (raw.type == "AGTSP") {
    throw ParseError(K::unsupported_format, raw.header_line, "asymmetric instances are not supported");
  }
  TspInstance tsp = interpret(raw);
  auto sets = read_sets(raw, tsp.n());
  return GtspInstance(std::move(tsp.name), std::move(tsp.weights), std::move(sets),
                      std::move(tsp.coords));
}

std::int64_t default_sentinel(const GtspInstance& instance) {
  std::int64_t max_finite = 0;
  const auto n = static_cast<VertexId>(instance.n());
  for (VertexId u = 0; u < n; ++u) {
    for (Weight w : instance.weights().row(u)) {
      if (w.is_finite()) max_finite = std::max(max_finite, w.value());
    }
  }
  constexpr std::int64_t kNice = 999999999;
  return max_finite < kNice ? kNice : max_finite + 1;
}

std::string write_gtsp(const GtspInstance& instance, std::int64_t sentinel) {
  const auto n = static_cast<VertexId>(instance.n());
  for (VertexId u = 0; u < n; ++u) {
    for (Weight w : instance.weights().row(u)) {
      if (w.is_finite() && w.value() >= sentinel) {
        throw ContractViolation("write_gtsp: sentinel " + std::to_string(sentinel) +
                                " does not exceed finite weight " + std::to_string(w.value()));
      }
    }
  }

  std::string out;
  out.reserve(instance.n() * instance.n() * 4 + 256);
  out += "NAME: " + instance.name() + "\n";
  out += "TYPE: GTSP\n";
  out += "COMMENT: INFINITY_SENTINEL: " + std::to_string(sentinel) + "\n";
  out += "DIMENSION: " + std::to_string(instance.n()) + "\n";
  out += "GTSP_SETS: " + std::to_string(instance.m()) + "\n";
  out += "EDGE_WEIGHT_TYPE: EXPLICIT\n";
  out += "EDGE_WEIGHT_FORMAT: FULL_MATRIX\n";
  out += "EDGE_WEIGHT_SECTION\n";
  for (VertexId u = 0; u < n; ++u) {
    bool first = true;
    for (Weight w : instance.weights().row(u)) {
      if (!first) out += ' ';
      first = false;
      out += std::to_string(w.is_infinite() ? sentinel : w.value());
    }
    out += '\n';
  }
  append_sets(out, instance);
  return out;
}

std::string write_gtsp_coordinates(const GtspInstance& instance) {
  const auto& coords = instance.coords();
  if (!coords || coords->points.size() != instance.n()) {
    throw ContractViolation("write_gtsp_coordinates: instance has no coordinates");
  }
  if (distance_matrix(*coords) != instance.weights()) {
    throw ContractViolation(
        "write_gtsp_coordinates: weights no longer follow the coordinates (edges were modified)");
  }
  std::string out;
  out += "NAME: " + instance.name() + "\n";
  out += "TYPE: GTSP\n";
  out += "DIMENSION: " + std::to_string(instance.n()) + "\n";
  out += "GTSP_SETS: " + std::to_string(instance.m()) + "\n";
  out += std::string("EDGE_WEIGHT_TYPE: ") + to_string(coords->type) + "\n";
  out += "NODE_COORD_SECTION\n";
  for (std::size_t v = 0; v < coords->points.size(); ++v) {
    out += std::to_string(v + 1);
    out += ' ';
    append_number(out, coords->points[v].x);
    out += ' ';
    append_number(out, coords->points[v].y);
    out += '\n';
  }
  append_sets(out, instance);
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace gtsp
