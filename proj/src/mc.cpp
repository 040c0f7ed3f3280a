#include "dpemp/mc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

#include "dpemp/constants.hpp"
#include "dpemp/error.hpp"
#include "dpemp/rng.hpp"
#include "parallel.hpp"

namespace dpemp {

namespace {

constexpr std::uint64_t kAzimuthStream = 0xa21f;

std::string space_unit(Space space) { return space == Space::Position ? "m" : "m/s"; }

std::string pair_label(const BiasResult& r) {
  std::ostringstream s;
  std::vector<int> prns;
  for (const LineSource& c : r.contributors) {
    if (std::find(prns.begin(), prns.end(), c.prn) == prns.end()) prns.push_back(c.prn);
  }
  for (std::size_t i = 0; i < prns.size(); ++i) s << (i ? "/" : "") << prns[i];
  return s.str();
}

// Noiseless scenario holding only the paths that define one intersection.
Scenario contributor_scenario(const Scenario& scenario, const BiasResult& point) {
  Scenario sub = scenario;
  sub.noise_sigma = 0.0;
  sub.satellites.clear();
  for (const SatelliteChannel& sat : scenario.satellites) {
    SatelliteChannel ch = sat;
    ch.paths.clear();
    for (std::size_t p = 0; p < sat.paths.size(); ++p) {
      const LineSource src{sat.prn, p};
      if (std::find(point.contributors.begin(), point.contributors.end(), src) !=
          point.contributors.end()) {
        ch.paths.push_back(sat.paths[p]);
      }
    }
    if (!ch.paths.empty()) sub.satellites.push_back(std::move(ch));
  }
  return sub;
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::ElevationSweep: return "elevation_sweep";
    case ExperimentKind::AzimuthMc: return "azimuth_mc";
    case ExperimentKind::CaseStudy: return "case_study";
    case ExperimentKind::OracleCompare: return "oracle_compare";
  }
  return "?";
}

bool Check::pass() const { return std::abs(actual - expected) <= tolerance; }

double ExperimentReport::summary_value(std::string_view key) const {
  for (const auto& [k, v] : summary) {
    if (k == key) return v;
  }
  throw Error(ErrorKind::InvalidArgument, "report has no summary entry '" + std::string(key) + "'");
}

bool ExperimentReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
}

bool identical(const ExperimentReport& a, const ExperimentReport& b) {
  if (a.kind != b.kind || !bitwise_equal(a.records, b.records)) return false;
  if (a.summary.size() != b.summary.size() || a.checks.size() != b.checks.size()) return false;
  auto same = [](double x, double y) {
    return std::bit_cast<std::uint64_t>(x) == std::bit_cast<std::uint64_t>(y);
  };
  for (std::size_t i = 0; i < a.summary.size(); ++i) {
    if (a.summary[i].first != b.summary[i].first || !same(a.summary[i].second, b.summary[i].second)) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    const Check& x = a.checks[i];
    const Check& y = b.checks[i];
    if (x.name != y.name || !same(x.expected, y.expected) || !same(x.actual, y.actual) ||
        !same(x.tolerance, y.tolerance)) {
      return false;
    }
  }
  return true;
}

void SweepRange::validate() const {
  if (!std::isfinite(start) || !std::isfinite(stop) || !(step > 0.0) || stop < start) {
    throw Error(ErrorKind::InvalidArgument, "sweep needs start <= stop and a positive step");
  }
}

std::vector<double> SweepRange::values() const {
  validate();
  std::vector<double> out;
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

ExperimentReport run_elevation_sweep(double delay_chips, double doppler_hz,
                                     const SweepRange& elevation_deg, const SignalConfig& signal) {
  signal.validate();
  const double guard_deg = 90.0 - tolerances::kZenithGuard * constants::kRadToDeg;
  if (elevation_deg.start < 0.0 || elevation_deg.stop >= guard_deg) {
    std::ostringstream msg;
    msg << "elevation sweep must stay inside [0, " << guard_deg << ") deg";
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
  ExperimentReport report;
  report.kind = ExperimentKind::ElevationSweep;
  report.records = ResultTable("elevation_sweep", {{"elevation", "deg"},
                                                   {"range_bias", "m"},
                                                   {"range_rate_bias", "m/s"}});
  bool rising_range = true, rising_rate = true;
  double last_range = -std::numeric_limits<double>::infinity();
  double last_rate = last_range;
  for (double el : elevation_deg.values()) {
    const double rad = el * constants::kDegToRad;
    const double range = project_to_range(delay_chips, rad, signal.code_rate_hz);
    const double rate = project_to_range_rate(doppler_hz, rad, signal.carrier_hz);
    rising_range = rising_range && range > last_range;
    rising_rate = rising_rate && rate > last_rate;
    last_range = range;
    last_rate = rate;
    report.records.add_row({el, range, rate});
  }
  report.summary = {{"points", static_cast<double>(report.records.rows().size())},
                    {"range_strictly_increasing", rising_range ? 1.0 : 0.0},
                    {"range_rate_strictly_increasing", rising_rate ? 1.0 : 0.0}};
  return report;
}

ExperimentReport run_random_azimuth_mc(double bias_i, double bias_j, const AzimuthMcConfig& config) {
  if (config.trials < 1) throw Error(ErrorKind::InvalidArgument, "trials must be at least 1");
  if (!std::isfinite(bias_i) || !std::isfinite(bias_j) || bias_i < 0.0 || bias_j < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "range biases must be finite and non-negative");
  }
  struct Sample {
    double separation, dx, dy, dr;
  };
  std::vector<Sample> samples(config.trials);
  detail::parallel_chunks(config.trials, config.exec.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const double separation =
          config.sampling == AzimuthSampling::Uniform
              ? constants::kPi * rng::uniform(config.seed, kAzimuthStream, k)
              : constants::kPi * static_cast<double>(k + 1) / static_cast<double>(config.trials + 1);
      Sample s{separation, 0.0, 0.0, std::numeric_limits<double>::infinity()};
      if (std::abs(std::sin(separation)) >= tolerances::kParallel) {
        const BiasResult r = config.space == Space::Position
                                 ? pair_bias(bias_i, bias_j, 0.0, separation)
                                 : pair_bias_velocity(bias_i, bias_j, 0.0, separation);
        s.dx = r.dx;
        s.dy = r.dy;
        s.dr = r.dr;
      }
      samples[k] = s;
    }
  });

  const std::string unit = space_unit(config.space);
  ExperimentReport report;
  report.kind = ExperimentKind::AzimuthMc;
  report.records = ResultTable("azimuth_mc", {{"delta_theta", "deg"},
                                              {"dr", unit},
                                              {"dx", unit},
                                              {"dy", unit},
                                              {"in_window", "-"}});
  report.records.add_note("window half extent " + format_number(config.window_half_extent) + " " +
                          unit + " flags records only; none are discarded");
  const double floor = std::max(std::abs(bias_i), std::abs(bias_j));
  double min_dr = std::numeric_limits<double>::infinity();
  double min_sep = std::numeric_limits<double>::quiet_NaN();
  double min_sampled_sep = std::numeric_limits<double>::infinity();
  std::size_t below_floor = 0, in_window = 0, unbounded = 0;
  for (const Sample& s : samples) {
    const bool inside = std::abs(s.dx) <= config.window_half_extent &&
                        std::abs(s.dy) <= config.window_half_extent && std::isfinite(s.dr);
    report.records.add_row({s.separation * constants::kRadToDeg, s.dr, s.dx, s.dy, inside ? 1.0 : 0.0});
    if (!std::isfinite(s.dr)) ++unbounded;
    if (inside) ++in_window;
    if (s.dr < floor - 1e-9) ++below_floor;
    if (s.dr < min_dr) {
      min_dr = s.dr;
      min_sep = s.separation;
    }
    min_sampled_sep = std::min(min_sampled_sep, s.separation);
  }
  report.summary = {{"trials", static_cast<double>(config.trials)},
                    {"seed", static_cast<double>(config.seed)},
                    {"floor", floor},
                    {"min_dr", min_dr},
                    {"argmin_delta_theta_deg", min_sep * constants::kRadToDeg},
                    {"min_delta_theta_deg", min_sampled_sep * constants::kRadToDeg},
                    {"samples_below_floor", static_cast<double>(below_floor)},
                    {"samples_in_window", static_cast<double>(in_window)},
                    {"samples_unbounded", static_cast<double>(unbounded)}};
  return report;
}

double scenario_correlation(const EnuVector& offset_en, Space space, const Scenario& scenario) {
  double sum = 0.0;
  for (const SatelliteChannel& sat : scenario.satellites) {
    sum += channel_correlation(offset_en, space, sat, channel_geometry(sat, scenario), scenario.signal);
  }
  return sum;
}

ExperimentReport run_case_study(const Scenario& scenario, const CaseStudyConfig& config) {
  scenario.validate();
  config.grid.validate();
  const Space space = config.grid.space;
  const std::string unit = space_unit(space);
  const std::vector<CenterLine> lines = center_lines(scenario, space);
  const IntersectionSet set = enumerate_intersections(lines);

  ExperimentReport report;
  report.kind = ExperimentKind::CaseStudy;
  report.records = ResultTable(std::string("case_study_") + std::string(to_string(space)),
                               {{"pair", "-"},
                                {"delta_theta", "deg"},
                                {"dx", unit},
                                {"dy", unit},
                                {"analytic_dr", unit},
                                {"grid_dr", unit},
                                {"diff", unit},
                                {"in_window", "-"}});
  const double tolerance = 1.5 * config.grid.step;
  double worst = 0.0;
  std::size_t inside_count = 0;
  for (const BiasResult& point : set.points) {
    const bool inside = std::abs(point.dx) <= config.grid.half_extent &&
                        std::abs(point.dy) <= config.grid.half_extent;
    double grid_dr = std::numeric_limits<double>::quiet_NaN();
    if (inside) {
      ++inside_count;
      const Scenario sub = contributor_scenario(scenario, point);
      const std::vector<Grid2D> grids = scenario_caf(config.grid, sub, config.exec);
      grid_dr = superpose_and_argmax(grids).estimate.horizontal_norm();
      worst = std::max(worst, std::abs(grid_dr - point.dr));
      report.checks.push_back({std::string(to_string(space)) + " PRN " + pair_label(point),
                               point.dr, grid_dr, tolerance});
    }
    report.records.add_row({pair_label(point), point.delta_theta * constants::kRadToDeg, point.dx,
                            point.dy, point.dr, grid_dr, grid_dr - point.dr, inside ? 1.0 : 0.0});
  }
  report.summary = {{"lines", static_cast<double>(lines.size())},
                    {"raw_intersections", static_cast<double>(set.raw_count)},
                    {"distinct_points", static_cast<double>(set.points.size())},
                    {"parallel_pairs", static_cast<double>(set.parallel.size())},
                    {"points_in_window", static_cast<double>(inside_count)},
                    {"max_abs_diff", worst},
                    {"tolerance", tolerance}};
  return report;
}

ExperimentReport run_oracle_compare(const Scenario& scenario, const CaseStudyConfig& config) {
  scenario.validate();
  config.grid.validate();
  if (scenario.noise_sigma > 0.0) {
    throw Error(ErrorKind::InvalidArgument, "oracle comparison needs a noiseless scenario");
  }
  const Space space = config.grid.space;
  const std::string unit = space_unit(space);
  const std::vector<CenterLine> lines = center_lines(scenario, space);
  const IntersectionSet set = enumerate_intersections(lines);
  const GridEstimate est = superpose_and_argmax(scenario_caf(config.grid, scenario, config.exec));

  ExperimentReport report;
  report.kind = ExperimentKind::OracleCompare;
  report.records = ResultTable(std::string("oracle_compare_") + std::string(to_string(space)),
                               {{"pair", "-"},
                                {"delta_theta", "deg"},
                                {"dx", unit},
                                {"dy", unit},
                                {"dr", unit},
                                {"correlation", "-"}});
  const BiasResult* best = nullptr;
  double best_corr = -std::numeric_limits<double>::infinity();
  for (const BiasResult& point : set.points) {
    const double corr = scenario_correlation(point.point(), space, scenario);
    report.records.add_row({pair_label(point), point.delta_theta * constants::kRadToDeg, point.dx,
                            point.dy, point.dr, corr});
    if (corr > best_corr || (corr == best_corr && best && point.dr < best->dr)) {
      best_corr = corr;
      best = &point;
    }
  }
  for (const CenterLine& line : lines) {
    report.summary.emplace_back("radius_prn" + std::to_string(line.source.prn) + "_path" +
                                    std::to_string(line.source.path),
                                line.tangent_offset);
  }
  report.summary.emplace_back("argmax_dx", est.estimate.e);
  report.summary.emplace_back("argmax_dy", est.estimate.n);
  report.summary.emplace_back("argmax_dr", est.estimate.horizontal_norm());
  report.summary.emplace_back("argmax_value", est.peak);
  if (best) {
    const double offset = std::max(std::abs(est.estimate.e - best->dx), std::abs(est.estimate.n - best->dy));
    report.summary.emplace_back("best_dx", best->dx);
    report.summary.emplace_back("best_dy", best->dy);
    report.summary.emplace_back("best_dr", best->dr);
    report.summary.emplace_back("best_correlation", best_corr);
    report.summary.emplace_back("argmax_offset_steps", offset / config.grid.step);
    report.checks.push_back({"argmax within one step of PRN " + pair_label(*best), 0.0, offset,
                             config.grid.step * (1.0 + 1e-9)});
  }
  return report;
}

}  // namespace dpemp
