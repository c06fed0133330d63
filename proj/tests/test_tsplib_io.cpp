#include <doctest.h>

#include <string>

#include "gtsp/errors.hpp"
#include "gtsp/tsplib_io.hpp"
#include "helpers.hpp"

using namespace gtsp;
using namespace gtsp::testing;

namespace {

ParseError parse_error_of(const std::string& text, bool gtsp = true) {
  try {
    if (gtsp) {
      parse_gtsp(text);
    } else {
      parse_tsp(text);
    }
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error");
  return ParseError(ParseErrorKind::malformed_data, 0, "unreachable");
}

const char* kSmallGtsp =
    "NAME: small\n"
    "TYPE: GTSP\n"
    "DIMENSION: 4\n"
    "GTSP_SETS: 3\n"
    "EDGE_WEIGHT_TYPE: EXPLICIT\n"
    "EDGE_WEIGHT_FORMAT: FULL_MATRIX\n"
    "EDGE_WEIGHT_SECTION\n"
    "0 1 2 3\n"
    "1 0 4 5\n"
    "2 4 0 6\n"
    "3 5 6 0\n"
    "GTSP_SET_SECTION\n"
    "1 1 2 -1\n"
    "2 3 -1\n"
    "3 4 -1\n"
    "EOF\n";

std::string explicit_tsp(const std::string& format, const std::string& body) {
  return "NAME: t\nTYPE: TSP\nDIMENSION: 4\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: " +
         format + "\nEDGE_WEIGHT_SECTION\n" + body + "EOF\n";
}

}  // namespace

TEST_CASE("fixture files parse with their declared sizes") {
  CHECK(load_tsp("ulysses16.tsp").n() == 16);
  CHECK(load_tsp("ulysses22.tsp").n() == 22);
  CHECK(load_tsp("gr17.tsp").n() == 17);
  CHECK(load_tsp("fri26.tsp").n() == 26);
  CHECK(load_tsp("berlin52.tsp").n() == 52);
  const TspInstance pr = load_tsp("pr2392.tsp");
  CHECK(pr.n() == 2392);
  REQUIRE(pr.coords.has_value());
  CHECK(pr.coords->type == EdgeWeightType::euc_2d);
  CHECK(load_tsp("ulysses16.tsp").coords->type == EdgeWeightType::geo);
  CHECK_FALSE(load_tsp("gr17.tsp").coords.has_value());
}

TEST_CASE("known optimal tour lengths confirm distance conventions") {
  // Exact optimum over singleton clusters.
  CHECK(held_karp(as_singletons(load_tsp("ulysses16.tsp"))) == Weight(6859));
  CHECK(held_karp(as_singletons(load_tsp("gr17.tsp"))) == Weight(2085));
}

TEST_CASE("berlin52 reference tour has the published length") {
  // Published optimal tour for berlin52 (1-based), length 7542.
  const std::vector<int> tour{1,  49, 32, 45, 19, 41, 8,  9,  10, 43, 33, 51, 11, 52, 14, 13, 47, 26,
                              27, 28, 12, 25, 4,  6,  15, 5,  24, 48, 38, 37, 40, 39, 36, 35, 34, 44,
                              46, 16, 29, 50, 20, 23, 30, 2,  7,  42, 21, 17, 3,  18, 31, 22};
  const TspInstance berlin = load_tsp("berlin52.tsp");
  std::int64_t total = 0;
  for (std::size_t i = 0; i < tour.size(); ++i) {
    total += berlin.weights.at(tour[i] - 1, tour[(i + 1) % tour.size()] - 1).value();
  }
  CHECK(total == 7542);
}

TEST_CASE("every explicit layout yields the same matrix") {
  const TspInstance full = parse_tsp(explicit_tsp("FULL_MATRIX", "0 1 2 3\n1 0 4 5\n2 4 0 6\n3 5 6 0\n"));
  const TspInstance lower_diag = parse_tsp(explicit_tsp("LOWER_DIAG_ROW", "0\n1 0\n2 4 0\n3 5 6 0\n"));
  const TspInstance upper_diag = parse_tsp(explicit_tsp("UPPER_DIAG_ROW", "0 1 2 3\n0 4 5\n0 6\n0\n"));
  const TspInstance lower = parse_tsp(explicit_tsp("LOWER_ROW", "1\n2 4\n3 5 6\n"));
  const TspInstance upper = parse_tsp(explicit_tsp("UPPER_ROW", "1 2 3\n4 5\n6\n"));
  CHECK(full.weights == lower_diag.weights);
  CHECK(full.weights == upper_diag.weights);
  CHECK(full.weights == lower.weights);
  CHECK(full.weights == upper.weights);
  CHECK(full.weights.at(2, 3) == Weight(6));
}

TEST_CASE("GTSP sets become clusters") {
  const GtspInstance g = parse_gtsp(kSmallGtsp);
  CHECK(g.name() == "small");
  CHECK(g.m() == 3);
  CHECK(g.cluster(0).size() == 2);
  CHECK(g.cluster_of(3) == 2);
  CHECK(validate(g).empty());
}

TEST_CASE("write then parse is the identity, infinity included") {
  GtspInstance g = parse_gtsp(kSmallGtsp);
  set_edge_infinite(g, 0, 3);
  const std::string text = write_gtsp(g, 999);
  CHECK(text.find("INFINITY_SENTINEL: 999") != std::string::npos);
  const GtspInstance back = parse_gtsp(text);
  CHECK(back == g);
  CHECK(back.dist(3, 0).is_infinite());
  CHECK(write_gtsp(back, 999) == text);

  SUBCASE("sentinel must exceed every finite weight") {
    CHECK_THROWS_AS(write_gtsp(g, 6), ContractViolation);
    CHECK(default_sentinel(g) == 999999999);
  }
}

TEST_CASE("coordinate files round-trip through the coordinate writer") {
  for (const char* name : {"ulysses16.tsp", "berlin52.tsp"}) {
    const TspInstance tsp = load_tsp(name);
    const GtspInstance g = as_singletons(tsp);
    const GtspInstance back = parse_gtsp(write_gtsp_coordinates(g));
    CHECK(back == g);
  }
  GtspInstance modified = as_singletons(load_tsp("berlin52.tsp"));
  set_edge_infinite(modified, 0, 1);
  CHECK_THROWS_AS(write_gtsp_coordinates(modified), ContractViolation);
}

TEST_CASE("parse errors carry a kind and the offending line") {
  SUBCASE("garbage header") {
    const ParseError e = parse_error_of("hello world\n");
    CHECK(e.kind() == ParseErrorKind::malformed_header);
    CHECK(e.line() == 1);
    CHECK(std::string(e.what()).find("line 1") != std::string::npos);
  }
  SUBCASE("unknown keyword") {
    const ParseError e = parse_error_of("NAME: x\nTYPE: GTSP\nFROBNICATE: 3\n");
    CHECK(e.kind() == ParseErrorKind::malformed_header);
    CHECK(e.line() == 3);
  }
  SUBCASE("negative weight") {
    const ParseError e = parse_error_of(explicit_tsp("LOWER_ROW", "1\n2 -4\n3 5 6\n"), false);
    CHECK(e.kind() == ParseErrorKind::negative_weight);
    CHECK(e.line() == 8);
  }
  SUBCASE("asymmetric full matrix") {
    const ParseError e =
        parse_error_of(explicit_tsp("FULL_MATRIX", "0 1 2 3\n1 0 4 5\n2 4 0 6\n3 5 7 0\n"), false);
    CHECK(e.kind() == ParseErrorKind::asymmetric_matrix);
  }
  SUBCASE("too few weights") {
    const ParseError e = parse_error_of(explicit_tsp("UPPER_ROW", "1 2 3\n4 5\n"), false);
    CHECK(e.kind() == ParseErrorKind::dimension_mismatch);
  }
  SUBCASE("vertex in two sets") {
    std::string text = kSmallGtsp;
    text.replace(text.find("2 3 -1"), 6, "2 3 1 -1");
    const ParseError e = parse_error_of(text);
    CHECK(e.kind() == ParseErrorKind::cluster_membership);
    CHECK(e.line() == 14);
  }
  SUBCASE("vertex in no set") {
    std::string text = kSmallGtsp;
    text.replace(text.find("3 4 -1"), 6, "3 -1");
    CHECK(parse_error_of(text).kind() == ParseErrorKind::cluster_membership);
  }
  SUBCASE("unsupported weight type") {
    std::string text = kSmallGtsp;
    text.replace(text.find("EXPLICIT"), 8, "ATT");
    CHECK(parse_error_of(text).kind() == ParseErrorKind::unsupported_format);
  }
  SUBCASE("TSP file where GTSP is required") {
    CHECK(parse_error_of(explicit_tsp("UPPER_ROW", "1 2 3\n4 5\n6\n")).kind() ==
          ParseErrorKind::malformed_header);
  }
  SUBCASE("non-numeric weight") {
    CHECK(parse_error_of(explicit_tsp("UPPER_ROW", "1 2 x\n4 5\n6\n"), false).kind() ==
          ParseErrorKind::malformed_data);
  }
}
