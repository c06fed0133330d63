#include "gtsp/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "gtsp/errors.hpp"
#include "gtsp/generator.hpp"
#include "gtsp/oracle.hpp"
#include "gtsp/tsplib_io.hpp"

namespace gtsp {

namespace fs = std::filesystem;

namespace {

fs::path with_suffix(const fs::path& p, const std::string& suffix) {
  return fs::path(p.string() + suffix);
}

// Half-up rounding, so 56.25 prints as 56.3.
std::string fixed(double value, int digits) {
  const double scale = std::pow(10.0, digits);
  value = std::round(value * scale) / scale;
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << value;
  return s.str();
}

}  // namespace

int cmd_reduce(const ReduceArgs& args, std::ostream& out, std::ostream& err) {
  GtspInstance instance;
  try {
    instance = parse_gtsp(read_text_file(args.input));
  } catch (const ParseError& e) {
    err << args.input.string() << ": " << e.what() << "\n";
    return kExitParseError;
  } catch (const ContractViolation& e) {
    err << args.input.string() << ": " << e.what() << "\n";
    return kExitContract;
  } catch (const std::runtime_error& e) {
    err << e.what() << "\n";
    return kExitParseError;
  }

  if (instance.m() < 3) {
    if (args.strict) {
      err << "reduce: instance has " << instance.m() << " clusters, at least 3 are required\n";
      return kExitContract;
    }
    err << "warning: fewer than 3 clusters, nothing to reduce\n";
  }

  try {
    IdMap map(instance.n());
    const ReductionReport report = run_reduction(instance, map, args.mode, args.execution);
    const std::int64_t sentinel = args.sentinel.value_or(default_sentinel(instance));
    const std::string reduced = write_gtsp(instance, sentinel);

    const fs::path report_path =
        args.report.empty() ? with_suffix(args.output, ".report.json") : args.report;
    write_text_file(args.output, reduced);
    write_text_file(with_suffix(args.output, ".idmap.json"), idmap_to_json(map));
    write_text_file(report_path, report_to_json(report));

    if (!report.infeasible_vertices.empty()) {
      err << "warning: " << report.infeasible_vertices.size()
          << " vertices in singleton clusters reach at most one other cluster; no tour exists\n";
    }
    out << report.instance_name << " " << to_string(report.mode) << ": removed "
        << report.vertices_removed.size() << "/" << report.n_before << " vertices ("
        << fixed(report.r_v_pct, 1) << "%), " << report.edges_removed.size() << " edges ("
        << fixed(report.r_e_pct, 1) << "%) in " << fixed(report.time_ms, 3) << " ms\n";
    return kExitOk;
  } catch (const ContractViolation& e) {
    err << "reduce: " << e.what() << "\n";
    return kExitContract;
  } catch (const std::runtime_error& e) {
    err << "reduce: " << e.what() << "\n";
    return kExitFailure;
  }
}

int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err) {
  TspInstance tsp;
  try {
    tsp = parse_tsp(read_text_file(args.input));
  } catch (const ParseError& e) {
    err << args.input.string() << ": " << e.what() << "\n";
    return kExitParseError;
  } catch (const std::runtime_error& e) {
    err << e.what() << "\n";
    return kExitParseError;
  }

  try {
    const GtspInstance instance =
        cluster_instance(tsp, {.m = args.clusters, .seed_rule = args.seed_rule});
    const std::string text = instance.coords() ? write_gtsp_coordinates(instance)
                                               : write_gtsp(instance, default_sentinel(instance));
    const fs::path target = args.output.empty() ? fs::path(instance.name() + ".gtsp") : args.output;
    write_text_file(target, text);
    out << "wrote " << target.string() << " (" << instance.n() << " vertices, " << instance.m()
        << " clusters)\n";
    return kExitOk;
  } catch (const ContractViolation& e) {
    err << "gen: " << e.what() << "\n";
    return kExitContract;
  } catch (const std::runtime_error& e) {
    err << "gen: " << e.what() << "\n";
    return kExitFailure;
  }
}

int cmd_verify(const VerifyConfig& config, std::ostream& out, std::ostream& err) {
  VerifyResult result;
  try {
    result = run_verification(config);
  } catch (const ContractViolation& e) {
    err << "verify: " << e.what() << "\n";
    return kExitContract;
  }

  auto line = [&](const char* name, const SuiteCounts& c, bool enabled) {
    if (!enabled) return;
    out << std::left << std::setw(14) << name << (c.failures == 0 ? "PASS" : "FAIL") << "  "
        << c.instances << " instances, " << c.checks << " checks, " << c.failures << " failing\n";
  };
  line("vertex-oracle", result.vertex, config.vertex_oracle);
  line("edge-oracle", result.edge, config.edge_oracle);
  line("optimum", result.optimum, config.optimum);

  std::uint64_t last_seed = 0;
  bool first = true;
  for (const auto& f : result.failures) {
    err << f.suite << " seed " << f.seed << ": " << f.detail << "\n";
    if (first || f.seed != last_seed) {
      err << "  reproduce: " << repro_command(f.seed, config) << "\n";
    }
    first = false;
    last_seed = f.seed;
  }
  return result.ok() ? kExitOk : kExitFailure;
}

std::optional<double> loglog_slope(const std::vector<std::pair<double, double>>& n_time) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [n, t] : n_time) {
    if (n > 0 && t > 0) pts.emplace_back(std::log(n), std::log(t));
  }
  if (pts.size() < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx <= 0) return std::nullopt;
  return sxy / sxx;
}

std::string bench_csv(const BenchSummary& summary) {
  std::ostringstream s;
  s << "instance,vertex_R_v,vertex_R_v_pct,vertex_T_s,edge_R_e_pct,edge_R_v,edge_T_s,"
       "combined_R_v_pct,combined_R_e_pct,combined_T_s,n,m,vertex_tests\n";
  auto secs = [](const ReductionReport& r) { return fixed(r.time_ms / 1000.0, 6); };
  for (const BenchRow& row : summary.rows) {
    s << row.instance << ',';
    if (row.vertex) {
      s << row.vertex->vertices_removed.size() << ',' << fixed(row.vertex->r_v_pct, 1) << ','
        << secs(*row.vertex) << ',';
    } else {
      s << ",,,";
    }
    if (row.edge) {
      s << fixed(row.edge->r_e_pct, 1) << ',' << row.edge->vertices_removed.size() << ','
        << secs(*row.edge) << ',';
    } else {
      s << ",,,";
    }
    if (row.combined) {
      s << fixed(row.combined->r_v_pct, 1) << ',' << fixed(row.combined->r_e_pct, 1) << ','
        << secs(*row.combined) << ',';
    } else {
      s << ",,,";
    }
    s << row.n << ',' << row.m << ',';
    if (row.vertex) s << row.vertex->vertex_tests;
    s << '\n';
  }
  return s.str();
}

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  struct Job {
    std::string name;
    fs::path path;      // empty for generated instances
    std::size_t ladder_n = 0;
  };
  std::vector<Job> jobs;
  if (!args.directory.empty()) {
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(args.directory, ec)) {
      if (entry.is_regular_file() && entry.path().extension() == ".gtsp") {
        jobs.push_back({entry.path().stem().string(), entry.path(), 0});
      }
    }
    if (ec) {
      err << "bench: cannot list " << args.directory.string() << ": " << ec.message() << "\n";
      return kExitFailure;
    }
    std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) { return a.path < b.path; });
  }
  for (std::size_t n : args.ladder) jobs.push_back({"ladder-" + std::to_string(n), {}, n});

  std::vector<std::optional<BenchRow>> rows(jobs.size());
  std::vector<std::string> warnings(jobs.size());
  const auto count = static_cast<std::int64_t>(jobs.size());

#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, args.threads))
  for (std::int64_t i = 0; i < count; ++i) {
    const Job& job = jobs[static_cast<std::size_t>(i)];
    try {
      const GtspInstance instance =
          job.path.empty()
              ? clustered_planar_instance(args.ladder_seed + job.ladder_n, job.ladder_n,
                                          std::max<std::size_t>(3, job.ladder_n / 5))
              : parse_gtsp(read_text_file(job.path));
      BenchRow row{job.name, instance.n(), instance.m(), {}, {}, {}};
      for (Mode mode : args.modes) {
        GtspInstance work = instance;
        IdMap map(work.n());
        ReductionReport report = run_reduction(work, map, mode);
        switch (mode) {
          case Mode::vertex: row.vertex = std::move(report); break;
          case Mode::edge: row.edge = std::move(report); break;
          case Mode::combined: row.combined = std::move(report); break;
        }
      }
      rows[static_cast<std::size_t>(i)] = std::move(row);
    } catch (const std::exception& e) {
      warnings[static_cast<std::size_t>(i)] = job.name + ": " + e.what();
    }
  }

  BenchSummary summary;
  std::vector<std::pair<double, double>> vertex_pts, edge_pts;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (!warnings[i].empty()) err << "warning: skipped " << warnings[i] << "\n";
    if (!rows[i]) continue;
    const BenchRow& row = *rows[i];
    if (row.vertex) vertex_pts.emplace_back(static_cast<double>(row.n), row.vertex->time_ms);
    if (row.edge) edge_pts.emplace_back(static_cast<double>(row.n), row.edge->time_ms);
    summary.rows.push_back(row);
  }
  summary.vertex_slope = loglog_slope(vertex_pts);
  summary.edge_slope = loglog_slope(edge_pts);

  const std::string csv = bench_csv(summary);
  if (args.csv.empty()) {
    out << csv;
  } else {
    try {
      write_text_file(args.csv, csv);
    } catch (const std::runtime_error& e) {
      err << "bench: " << e.what() << "\n";
      return kExitFailure;
    }
  }
  if (summary.vertex_slope) out << "vertex time slope (log-log): " << fixed(*summary.vertex_slope, 3) << "\n";
  if (summary.edge_slope) out << "edge time slope (log-log): " << fixed(*summary.edge_slope, 3) << "\n";

  if (!jobs.empty() && summary.rows.empty()) return kExitFailure;
  return kExitOk;
}

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      std::size_t used = 0;
      const auto a = std::stoull(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {a, a};
    }
    std::size_t used_a = 0, used_b = 0;
    const std::string left = text.substr(0, dots), right = text.substr(dots + 2);
    const auto a = std::stoull(left, &used_a);
    const auto b = std::stoull(right, &used_b);
    if (used_a != left.size() || used_b != right.size()) throw std::invalid_argument(text);
    return {a, b};
  } catch (const std::logic_error&) {
    throw ContractViolation("seed range must look like a..b, got '" + text + "'");
  }
}

int bench_threads_from_env() {
  const char* raw = std::getenv("GTSP_REDUCE_THREADS");
  if (raw == nullptr) return 1;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || v < 1) return 1;
  return static_cast<int>(std::min<long>(v, max_threads()));
}

}  // namespace gtsp
