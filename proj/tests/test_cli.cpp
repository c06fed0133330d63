#include <doctest.h>

#include <nlohmann/json.hpp>

#include <sstream>

#include "gtsp/commands.hpp"
#include "gtsp/errors.hpp"
#include "gtsp/tsplib_io.hpp"
#include "helpers.hpp"

using namespace gtsp;
using namespace gtsp::testing;
namespace fs = std::filesystem;

namespace {

fs::path generate(const fs::path& dir, const std::string& tsp, std::optional<std::size_t> m = {}) {
  std::ostringstream out, err;
  GenArgs args{data_path(tsp), dir / (tsp + ".gtsp"), m, CenterSeedRule::farthest_from_centroid};
  REQUIRE(cmd_gen(args, out, err) == kExitOk);
  return args.output;
}

}  // namespace

TEST_CASE("report JSON round-trips byte for byte") {
  ReductionReport r;
  r.instance_name = "4ulysses16";
  r.mode = Mode::combined;
  r.n_before = 16;
  r.m = 4;
  r.vertices_removed = {0, 5, 9};
  r.edges_removed = {{1, 2}, {3, 14}};
  r.r_v_pct = 18.75;
  r.r_e_pct = 2.5;
  r.removed_by_vertex_pass = 2;
  r.removed_by_strip = 1;
  r.edge_pairs_at_entry = 80;
  r.vertex_tests = 21;
  r.vertex_early_exits = 4;
  r.vertex_cycles = 2;
  r.time_ms = 0.125;
  const std::string text = report_to_json(r);
  const ReductionReport back = report_from_json(text);
  CHECK(back == r);
  CHECK(report_to_json(back) == text);

  const auto j = nlohmann::json::parse(text);
  CHECK(j["vertices_removed"] == nlohmann::json::array({1, 6, 10}));
  CHECK(j["mode"] == "combined");
  CHECK_THROWS_AS(report_from_json("{\"mode\": 3}"), ContractViolation);
  CHECK_THROWS_AS(report_from_json("not json"), ContractViolation);
}

TEST_CASE("modes parse by name") {
  CHECK(parse_mode("vertex") == Mode::vertex);
  CHECK(parse_mode("edge") == Mode::edge);
  CHECK(parse_mode("combined") == Mode::combined);
  CHECK_FALSE(parse_mode("both").has_value());
}

TEST_CASE("reduce writes a valid instance, the id map and the report") {
  const fs::path dir = scratch_dir("reduce");
  const fs::path input = generate(dir, "ulysses16.tsp");
  for (Mode mode : {Mode::vertex, Mode::edge, Mode::combined}) {
    CAPTURE(to_string(mode));
    const fs::path output = dir / (std::string("out-") + to_string(mode) + ".gtsp");
    std::ostringstream out, err;
    ReduceArgs args;
    args.input = input;
    args.output = output;
    args.mode = mode;
    REQUIRE(cmd_reduce(args, out, err) == kExitOk);
    CHECK(out.str().find("4ulysses16") != std::string::npos);

    const GtspInstance reduced = parse_gtsp(read_text_file(output));
    CHECK(validate(reduced).empty());
    CHECK(reduced.m() == 4);

    const ReductionReport report = report_from_json(read_text_file(fs::path(output.string() + ".report.json")));
    CHECK(report.mode == mode);
    CHECK(report.n_before == 16);
    CHECK(reduced.n() == 16 - report.vertices_removed.size());

    const auto idmap = nlohmann::json::parse(read_text_file(fs::path(output.string() + ".idmap.json")));
    CHECK(idmap["original_size"] == 16);
    const auto ids = idmap["current_to_original"].get<std::vector<int>>();
    CHECK(ids.size() == reduced.n());
    for (int id : ids) {
      CHECK(id >= 1);
      CHECK(id <= 16);
      CHECK(std::find(report.vertices_removed.begin(), report.vertices_removed.end(), id - 1) ==
            report.vertices_removed.end());
    }
  }
}

TEST_CASE("vertex mode is idempotent on its own output") {
  const fs::path dir = scratch_dir("idem");
  const fs::path input = generate(dir, "ulysses22.tsp");
  std::ostringstream out, err;
  ReduceArgs first;
  first.input = input;
  first.output = dir / "once.gtsp";
  first.mode = Mode::vertex;
  REQUIRE(cmd_reduce(first, out, err) == kExitOk);
  ReduceArgs second = first;
  second.input = first.output;
  second.output = dir / "twice.gtsp";
  REQUIRE(cmd_reduce(second, out, err) == kExitOk);
  const ReductionReport again = report_from_json(read_text_file(dir / "twice.gtsp.report.json"));
  CHECK(again.vertices_removed.empty());
  CHECK(read_text_file(first.output) == read_text_file(second.output));
}

TEST_CASE("reduce exit codes") {
  const fs::path dir = scratch_dir("codes");
  std::ostringstream out, err;

  SUBCASE("unparsable input") {
    write_text_file(dir / "bad.gtsp", "NAME: x\nTYPE: GTSP\nDIMENSION: three\n");
    ReduceArgs args{dir / "bad.gtsp", dir / "o.gtsp"};
    CHECK(cmd_reduce(args, out, err) == kExitParseError);
    CHECK(err.str().find("line 3") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "o.gtsp"));
  }
  SUBCASE("missing input") {
    ReduceArgs args{dir / "absent.gtsp", dir / "o.gtsp"};
    CHECK(cmd_reduce(args, out, err) == kExitParseError);
  }
  SUBCASE("strict refuses fewer than three clusters") {
    const fs::path two = generate(dir, "ulysses16.tsp", 2);
    ReduceArgs args{two, dir / "o.gtsp"};
    args.strict = true;
    CHECK(cmd_reduce(args, out, err) == kExitContract);
    args.strict = false;
    CHECK(cmd_reduce(args, out, err) == kExitOk);
    CHECK(report_from_json(read_text_file(dir / "o.gtsp.report.json")).skipped_small_m);
  }
  SUBCASE("all-singleton instance reduces to itself") {
    const fs::path single = generate(dir, "gr17.tsp", 17);
    ReduceArgs args{single, dir / "o.gtsp"};
    args.mode = Mode::vertex;
    CHECK(cmd_reduce(args, out, err) == kExitOk);
    const ReductionReport r = report_from_json(read_text_file(dir / "o.gtsp.report.json"));
    CHECK(r.vertices_removed.empty());
    CHECK(r.edges_removed.empty());
    CHECK(parse_gtsp(read_text_file(dir / "o.gtsp")) == parse_gtsp(read_text_file(single)));
  }
}

TEST_CASE("gen subcommand") {
  const fs::path dir = scratch_dir("gen");
  std::ostringstream out, err;
  const fs::path singles = generate(dir, "ulysses16.tsp", 16);
  const GtspInstance g = parse_gtsp(read_text_file(singles));
  CHECK(g.m() == 16);
  GenArgs too_many{data_path("ulysses16.tsp"), dir / "x.gtsp", 20, CenterSeedRule::farthest_from_centroid};
  CHECK(cmd_gen(too_many, out, err) == kExitContract);
  GenArgs missing{dir / "nope.tsp", dir / "x.gtsp", {}, CenterSeedRule::farthest_from_centroid};
  CHECK(cmd_gen(missing, out, err) == kExitParseError);
  // Matrix-only input is written in explicit form.
  const GtspInstance gr = parse_gtsp(read_text_file(generate(dir, "gr17.tsp")));
  CHECK(gr.name() == "4gr17");
  CHECK(gr == cluster_instance(load_tsp("gr17.tsp")));
}

TEST_CASE("verify subcommand") {
  std::ostringstream out, err;
  VerifyConfig config;
  config.seed_first = 1;
  config.seed_last = 6;
  CHECK(cmd_verify(config, out, err) == kExitOk);
  CHECK(out.str().find("vertex-oracle") != std::string::npos);
  CHECK(out.str().find("FAIL") == std::string::npos);

  SUBCASE("an injected fault is reported with a reproduce line") {
    std::ostringstream fout, ferr;
    VerifyConfig faulty = config;
    faulty.seed_last = 40;
    faulty.fault_skip_cluster_guard = true;
    faulty.vertex_oracle = false;
    faulty.optimum = false;
    CHECK(cmd_verify(faulty, fout, ferr) == kExitFailure);
    CHECK(fout.str().find("FAIL") != std::string::npos);
    CHECK(ferr.str().find("reproduce: gtsp_reduce verify --seeds ") != std::string::npos);
  }
  SUBCASE("an empty range checks nothing") {
    std::ostringstream eout, eerr;
    VerifyConfig empty = config;
    empty.seed_first = 5;
    empty.seed_last = 4;
    const VerifyResult r = run_verification(empty);
    CHECK(r.ok());
    CHECK(r.vertex.checks + r.edge.checks + r.optimum.checks == 0);
    CHECK(cmd_verify(empty, eout, eerr) == kExitOk);
  }
  SUBCASE("verification instances are reproducible and in range") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      const GtspInstance g = verification_instance(seed, config);
      CHECK(g == verification_instance(seed, config));
      CHECK(g.n() >= config.min_n);
      CHECK(g.n() <= config.max_n);
      CHECK(g.m() >= config.min_m);
      CHECK(g.m() <= config.max_m);
    }
  }
}

TEST_CASE("bench subcommand") {
  const fs::path dir = scratch_dir("bench");
  std::ostringstream out, err;
  BenchArgs args;
  args.directory = dir;
  REQUIRE(cmd_bench(args, out, err) == kExitOk);
  CHECK(out.str() ==
        "instance,vertex_R_v,vertex_R_v_pct,vertex_T_s,edge_R_e_pct,edge_R_v,edge_T_s,"
        "combined_R_v_pct,combined_R_e_pct,combined_T_s,n,m,vertex_tests\n");

  generate(dir, "ulysses16.tsp");
  generate(dir, "gr17.tsp");
  std::ostringstream out2;
  args.csv = dir / "results.csv";
  args.ladder = {60, 120};
  REQUIRE(cmd_bench(args, out2, err) == kExitOk);
  std::istringstream csv(read_text_file(args.csv));
  std::vector<std::string> lines;
  for (std::string line; std::getline(csv, line);) lines.push_back(line);
  REQUIRE(lines.size() == 5);
  CHECK(lines[1].rfind("gr17.tsp,", 0) == 0);
  CHECK(lines[2].rfind("ulysses16.tsp,", 0) == 0);
  CHECK(lines[3].rfind("ladder-60,", 0) == 0);
  for (const auto& line : lines) CHECK(std::count(line.begin(), line.end(), ',') == 12);
  CHECK(out2.str().find("vertex time slope") != std::string::npos);
}

TEST_CASE("log-log slope") {
  CHECK(*loglog_slope({{10, 100}, {100, 10000}, {1000, 1000000}}) == doctest::Approx(2.0));
  CHECK(*loglog_slope({{10, 5}, {20, 10}}) == doctest::Approx(1.0));
  CHECK_FALSE(loglog_slope({{10, 5}}).has_value());
  CHECK_FALSE(loglog_slope({{10, 5}, {10, 6}}).has_value());
}

TEST_CASE("seed ranges") {
  CHECK(parse_seed_range("1..200") == std::pair<std::uint64_t, std::uint64_t>{1, 200});
  CHECK(parse_seed_range("7") == std::pair<std::uint64_t, std::uint64_t>{7, 7});
  CHECK(parse_seed_range("9..3") == std::pair<std::uint64_t, std::uint64_t>{9, 3});
  CHECK_THROWS_AS(parse_seed_range("a..b"), ContractViolation);
  CHECK_THROWS_AS(parse_seed_range("1..2x"), ContractViolation);
}
