#include "dpemp/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "dpemp/constants.hpp"
#include "dpemp/error.hpp"
#include "dpemp/mc.hpp"
#include "dpemp/presets.hpp"
#include "dpemp/report.hpp"
#include "dpemp/scenario_io.hpp"
#include "dpemp/scmb.hpp"

#ifndef DPEMP_DATA_DIR
#define DPEMP_DATA_DIR "data"
#endif

namespace dpemp::cli {

namespace {

namespace fs = std::filesystem;

struct Globals {
  std::string scenario;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  bool seed_given = false;
  std::string format = "csv";
  unsigned threads = 0;
};

class Session {
 public:
  Session(const Globals& g, std::ostream& out) : g_(g), out_(out) {}

  Execution exec() const {
    return g_.threads == 0 ? Execution::hardware() : Execution{g_.threads};
  }

  fs::path resolve(const std::string& name) const {
    fs::path p(name);
    if (fs::exists(p)) return p;
    std::vector<fs::path> roots;
    if (const char* env = std::getenv("DPEMP_DATA_DIR")) roots.emplace_back(env);
    roots.emplace_back(DPEMP_DATA_DIR);
    for (const fs::path& root : roots) {
      if (fs::exists(root / p)) return root / p;
    }
    return p;  // let the loader report the missing file
  }

  ScenarioFile scenario_file(bool required) const {
    if (g_.scenario.empty()) {
      if (required) throw CLI::RequiredError("--scenario");
      ScenarioFile f;
      f.scenario = presets::table1();
      return f;
    }
    ScenarioFile f = load_scenario_file(resolve(g_.scenario));
    if (g_.seed_given) f.scenario.seed = g_.seed;
    return f;
  }

  void write(const ResultTable& table) const {
    fs::create_directories(g_.out_dir);
    const bool json = g_.format == "json";
    const fs::path path = fs::path(g_.out_dir) / (table.name() + (json ? ".json" : ".csv"));
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
    if (json) {
      f << table.to_json();
    } else {
      table.write_csv(f);
    }
    out_ << "wrote " << path.string() << "\n";
  }

  void summary(const ExperimentReport& report) const {
    for (const auto& [k, v] : report.summary) out_ << "  " << k << " = " << format_number(v) << "\n";
  }

  const Globals& globals() const { return g_; }
  std::ostream& out() const { return out_; }

 private:
  const Globals& g_;
  std::ostream& out_;
};

SweepRange parse_sweep(const std::string& text) {
  SweepRange r;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> r.start >> c1 >> r.stop >> c2 >> r.step) || c1 != ':' || c2 != ':') {
    throw CLI::ValidationError("--sweep", "expected start:stop:step in degrees");
  }
  return r;
}

int cmd_project(const Session& s, double delay, double doppler, const std::string& sweep) {
  const Scenario sc = s.scenario_file(false).scenario;
  ResultTable t("project", {{"prn", "-"},
                            {"elevation", "deg"},
                            {"azimuth", "deg"},
                            {"range_bias", "m"},
                            {"range_rate_bias", "m/s"}});
  for (const SatelliteChannel& sat : sc.satellites) {
    t.add_row({std::to_string(sat.prn), sat.angles.elevation_deg(), sat.angles.azimuth_deg(),
               project_to_range(delay, sat.angles.elevation, sc.signal.code_rate_hz),
               project_to_range_rate(doppler, sat.angles.elevation, sc.signal.carrier_hz)});
  }
  for (std::size_t i = 0; i < t.rows().size(); ++i) {
    s.out() << "PRN " << std::get<std::string>(t.rows()[i][0])
            << ": range bias " << format_number(t.number(i, "range_bias")) << " m, range-rate bias "
            << format_number(t.number(i, "range_rate_bias")) << " m/s\n";
  }
  s.write(t);
  if (!sweep.empty()) {
    const ExperimentReport rep = run_elevation_sweep(delay, doppler, parse_sweep(sweep), sc.signal);
    ResultTable fig("fig7_data", rep.records.columns());
    for (const auto& row : rep.records.rows()) fig.add_row(row);
    s.write(fig);
    s.summary(rep);
  }
  return kOk;
}

std::vector<Space> spaces_for(const std::string& name) {
  if (name == "both") return {Space::Position, Space::Velocity};
  return {space_from_string(name)};
}

int cmd_intersect(const Session& s, const std::string& space_name) {
  const Scenario sc = s.scenario_file(true).scenario;
  for (Space space : spaces_for(space_name)) {
    const std::vector<CenterLine> lines = center_lines(sc, space);
    const IntersectionSet set = enumerate_intersections(lines);
    const std::string unit = space == Space::Position ? "m" : "m/s";
    ResultTable t("intersections_" + std::string(to_string(space)),
                  {{"contributors", "-"}, {"delta_theta", "deg"}, {"dx", unit}, {"dy", unit}, {"dr", unit}});
    for (const BiasResult& r : set.points) {
      std::string who;
      for (const LineSource& c : r.contributors) {
        who += (who.empty() ? "" : " ") + std::to_string(c.prn) + ":" + std::to_string(c.path);
      }
      t.add_row({who, r.delta_theta * constants::kRadToDeg, r.dx, r.dy, r.dr});
    }
    for (const auto& [a, b] : set.parallel) {
      t.add_note("parallel (unbounded): " + std::to_string(a.prn) + ":" + std::to_string(a.path) + " " +
                 std::to_string(b.prn) + ":" + std::to_string(b.path));
    }
    s.out() << to_string(space) << ": " << set.raw_count << " cross-satellite pairs, "
            << set.points.size() << " distinct points, " << set.parallel.size() << " parallel\n";
    s.write(t);
  }
  return kOk;
}

int cmd_bounds(const Session& s, const std::vector<double>& radii) {
  const ErrorBound b = case_bound(radii);
  ResultTable t("bounds", {{"case", "-"}, {"lower", "m"}, {"lower_attained", "-"}, {"upper", "m"},
                           {"attained_at", "deg"}});
  t.add_row({std::string(to_string(b.label)), b.lower, b.lower_attained ? 1.0 : 0.0, b.upper,
             b.attained_at * constants::kRadToDeg});
  s.out() << to_string(b.label) << ": " << (b.lower_attained ? "[" : "(") << format_number(b.lower)
          << ", inf)\n";
  s.write(t);

  if (!s.globals().scenario.empty()) {
    const Scenario sc = s.scenario_file(true).scenario;
    if (sc.satellites.size() != radii.size()) {
      throw CLI::ValidationError("--radii", "needs one radius per scenario satellite");
    }
    ResultTable pairs("bounds_pairs", {{"pair", "-"}, {"delta_theta", "deg"}, {"dr", "m"},
                                       {"critical_delta_theta", "deg"}, {"dr_min", "m"}});
    for (std::size_t i = 0; i < radii.size(); ++i) {
      for (std::size_t j = i + 1; j < radii.size(); ++j) {
        const auto& a = sc.satellites[i];
        const auto& c = sc.satellites[j];
        const std::string label = std::to_string(a.prn) + "/" + std::to_string(c.prn);
        double dr = std::numeric_limits<double>::infinity();
        try {
          dr = pair_bias(radii[i], radii[j], a.angles.azimuth, c.angles.azimuth).dr;
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::ParallelLines) throw;
        }
        double crit = std::numeric_limits<double>::quiet_NaN(), dr_min = 0.0;
        if (radii[i] > 0.0 || radii[j] > 0.0) {
          const CriticalPoint cp = critical_points(radii[i], radii[j]);
          crit = cp.delta_theta * constants::kRadToDeg;
          dr_min = cp.dr_min;
        }
        pairs.add_row({label, azimuth_separation(a.angles.azimuth, c.angles.azimuth) * constants::kRadToDeg,
                       dr, crit, dr_min});
      }
    }
    s.write(pairs);
  }
  return kOk;
}

int cmd_caf(const Session& s, const std::string& space_name, std::optional<double> step,
            std::optional<double> half_extent) {
  const ScenarioFile file = s.scenario_file(true);
  for (Space space : spaces_for(space_name)) {
    GridSpec spec = grid_for(file, space);
    if (step) spec.step = *step;
    if (half_extent) spec.half_extent = *half_extent;
    const std::vector<Grid2D> grids = scenario_caf(spec, file.scenario, s.exec());
    const Grid2D total = superpose(grids);
    const GridEstimate est = argmax(total);
    const std::string unit = space == Space::Position ? "m" : "m/s";
    ResultTable t("caf_" + std::string(to_string(space)), {{"east", unit}, {"north", unit}, {"value", "-"}});
    const std::size_t n = spec.samples_per_axis();
    for (std::size_t row = 0; row < n; ++row) {
      for (std::size_t col = 0; col < n; ++col) {
        t.add_row({spec.coordinate(col), spec.coordinate(row), total.at(row, col)});
      }
    }
    s.out() << to_string(space) << " argmax at (" << format_number(est.estimate.e) << ", "
            << format_number(est.estimate.n) << ") " << unit << ", error "
            << format_number(est.estimate.horizontal_norm()) << " " << unit << ", peak "
            << format_number(est.peak) << "\n";
    s.write(t);
  }
  return kOk;
}

int cmd_montecarlo(const Session& s, double rho_i, double rho_j, std::size_t trials, bool sweep,
                   const std::string& space_name) {
  AzimuthMcConfig cfg;
  cfg.trials = trials;
  cfg.seed = s.globals().seed;
  cfg.sampling = sweep ? AzimuthSampling::Sweep : AzimuthSampling::Uniform;
  cfg.space = space_from_string(space_name);
  cfg.exec = s.exec();
  const ExperimentReport rep = run_random_azimuth_mc(rho_i, rho_j, cfg);
  ResultTable t("montecarlo", rep.records.columns());
  for (const auto& row : rep.records.rows()) t.add_row(row);
  for (const auto& note : rep.records.notes()) t.add_note(note);
  s.summary(rep);
  s.write(t);
  return kOk;
}

int cmd_report(const Session& s, std::size_t trials) {
  ReproductionOptions opts;
  opts.seed = s.globals().seed;
  opts.trials = trials;
  opts.exec = s.exec();
  const ReproductionReport rep = run_reproductions(opts);
  for (const ResultTable& t : rep.tables) s.write(t);
  s.write(rep.checks_table());
  std::size_t failed = 0;
  for (const Check& c : rep.checks) {
    if (!c.pass()) ++failed;
    s.out() << (c.pass() ? "PASS " : "FAIL ") << c.name << ": expected " << format_number(c.expected)
            << ", got " << format_number(c.actual) << " (tol " << format_number(c.tolerance) << ")\n";
  }
  s.out() << rep.checks.size() - failed << "/" << rep.checks.size() << " checks passed\n";
  return failed == 0 ? kOk : kCheckFailed;
}

int cmd_scenario(const Session& s, const std::string& preset, const std::string& style) {
  ScenarioFile f;
  f.scenario = presets::by_name(preset);
  f.grids = {GridSpec::position_default(), GridSpec::velocity_default()};
  const SatelliteStyle st = style == "positions" ? SatelliteStyle::Positions : SatelliteStyle::Angles;
  fs::create_directories(s.globals().out_dir);
  const fs::path path = fs::path(s.globals().out_dir) / (preset + ".scenario");
  std::ofstream(path, std::ios::binary) << write_scenario(f, st);
  s.out() << "wrote " << path.string() << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multipath error propagation for GNSS direct position estimation", "dpemp"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--scenario", g.scenario, "Scenario JSON file");
  app.add_option("--out", g.out_dir, "Output directory");
  app.add_option("--seed", g.seed, "Random seed")->each([&](const std::string&) { g.seed_given = true; });
  app.add_option("--format", g.format, "Table format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", g.threads, "Worker threads (0 = hardware)");

  double delay = 1.0, doppler = 120.0;
  std::string sweep;
  auto* project = app.add_subcommand("project", "Elevation projection of delay/Doppler biases");
  project->add_option("--delay-chips", delay, "Code delay bias [chips]");
  project->add_option("--doppler-hz", doppler, "Doppler bias [Hz]");
  project->add_option("--sweep", sweep, "Also write fig7_data: start:stop:step elevation [deg]");

  std::string space = "both";
  auto* intersect = app.add_subcommand("intersect", "Center-line intersections of a scenario");
  intersect->add_option("--space", space)->check(CLI::IsMember({"position", "velocity", "both"}));

  std::vector<double> radii;
  auto* bounds = app.add_subcommand("bounds", "Error bound for per-satellite NLOS radii");
  bounds->add_option("--radii", radii, "Comma-separated radii [m]")->delimiter(',')->required();

  std::optional<double> step, half_extent;
  std::string caf_space = "position";
  auto* caf = app.add_subcommand("caf", "Evaluate the superposed correlation grid");
  caf->add_option("--space", caf_space)->check(CLI::IsMember({"position", "velocity", "both"}));
  caf->add_option("--step", step, "Grid step [m or m/s]");
  caf->add_option("--half-extent", half_extent, "Grid half extent [m or m/s]");

  double rho_i = 0.0, rho_j = 0.0;
  std::size_t trials = 10000;
  bool mc_sweep = false;
  std::string mc_space = "position";
  auto* mc = app.add_subcommand("montecarlo", "Random azimuth-separation Monte Carlo");
  mc->add_option("--rho-i", rho_i, "Bias of satellite i [m or m/s]")->required();
  mc->add_option("--rho-j", rho_j, "Bias of satellite j [m or m/s]")->required();
  mc->add_option("--trials", trials)->check(CLI::PositiveNumber);
  mc->add_flag("--sweep", mc_sweep, "Deterministic separation sweep instead of random draws");
  mc->add_option("--space", mc_space)->check(CLI::IsMember({"position", "velocity"}));

  std::size_t report_trials = 10000;
  auto* report = app.add_subcommand("report", "Run every bundled reproduction and diff it");
  report->add_option("--trials", report_trials)->check(CLI::PositiveNumber);

  std::string preset, style = "angles";
  auto* scenario = app.add_subcommand("scenario", "Write a bundled scenario fixture");
  scenario->add_option("--preset", preset)->required()->check(CLI::IsMember({"table1", "case1", "case2", "case3", "table6"}));
  scenario->add_option("--style", style)->check(CLI::IsMember({"angles", "positions"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "dpemp: " << e.what() << "\n";
    return kUsage;
  }

  const Session s(g, out);
  try {
    if (*project) return cmd_project(s, delay, doppler, sweep);
    if (*intersect) return cmd_intersect(s, space);
    if (*bounds) return cmd_bounds(s, radii);
    if (*caf) return cmd_caf(s, caf_space, step, half_extent);
    if (*mc) return cmd_montecarlo(s, rho_i, rho_j, trials, mc_sweep, mc_space);
    if (*report) return cmd_report(s, report_trials);
    if (*scenario) return cmd_scenario(s, preset, style);
  } catch (const ScenarioError& e) {
    err << "dpemp: scenario: " << e.what() << "\n";
    return e.exit_code();
  } catch (const CLI::Error& e) {
    err << "dpemp: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "dpemp: " << e.what() << "\n";
    return kComputation;
  }
  return kUsage;
}

}  // namespace dpemp::cli
