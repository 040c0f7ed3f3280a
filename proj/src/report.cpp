#include "dpemp/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "dpemp/constants.hpp"
#include "dpemp/presets.hpp"
#include "dpemp/scmb.hpp"

namespace dpemp {

namespace {

constexpr double kNone = std::numeric_limits<double>::quiet_NaN();

// Published values, one decimal.
struct ElevationRow {
  int prn;
  double range_bias;
  double range_rate_bias;
};
constexpr std::array<ElevationRow, 4> kTable3{{
    {10, 36.0, 37.5},
    {18, 39.9, 41.7},
    {23, 74.0, 77.2},
    {24, 84.8, 88.5},
}};
constexpr double kTable3Tolerance = 0.1;

constexpr double kHorizonRange = 29.3;
constexpr double kHorizonRangeRate = 30.6;
constexpr double kHorizonTolerance = 0.1;

struct PairColumn {
  const char* label;
  int prn_i;
  int prn_j;
  double published_separation_deg;
  double separation_tolerance_deg;
  double tolerance;  // OA carries the 85.1 vs 84.9 deg separation mismatch
};
constexpr std::array<PairColumn, 5> kPairs{{
    {"OA", 10, 24, 85.1, 0.3, 0.4},
    {"OB", 18, 23, 122.3, 0.1, 0.1},
    {"OC", 10, 18, 106.4, 0.1, 0.1},
    {"OD", 23, 24, 69.0, 0.1, 0.1},
    {"OE", 10, 23, 15.9, 0.1, 0.1},
}};

struct PairValue {
  double theoretical;
  double simulated;
};
// Rows: case 1..3; columns follow kPairs. Position [m] and velocity [m/s] tables coincide.
const std::array<std::array<PairValue, 5>, 3> kPairTable{{
    {{{kNone, kNone}, {47.3, 46.7}, {41.7, 41.9}, {kNone, kNone}, {kNone, kNone}}},
    {{{54.2, 54.3}, {82.9, 82.3}, {66.7, 66.8}, {48.5, 48.2}, {40.4, 40.7}}},
    {{{60.8, 61.2}, {72.8, 73.2}, {84.4, 84.9}, {30.3, 30.0}, {kNone, kNone}}},
}};

constexpr double kMcRadiusI = 60.0;
constexpr double kMcRadiusJ = 40.0;
constexpr double kMcMinRelTolerance = 0.005;
constexpr double kMcArgminToleranceDeg = 1.0;

struct FieldRow {
  const char* quantity;
  const char* unit;
  double theoretical;
  double field;
};
constexpr std::array<FieldRow, 4> kTable6{{
    {"range_bias", "m", 39.9, 39.7},
    {"dr", "m", 47.2, 46.1},
    {"range_rate_bias", "m/s", 41.8, 41.8},
    {"dr_dot", "m/s", 49.5, 47.6},
}};
constexpr double kTable6Tolerance = 0.1;

double deg(double rad) { return rad * constants::kRadToDeg; }

void reproduce_table3(ReproductionReport& out) {
  const Scenario sc = presets::table1();
  ResultTable t("table3", {{"prn", "-"},
                           {"elevation", "deg"},
                           {"range_bias", "m"},
                           {"range_bias_published", "m"},
                           {"range_rate_bias", "m/s"},
                           {"range_rate_bias_published", "m/s"}});
  for (const ElevationRow& row : kTable3) {
    const SatelliteChannel& sat = sc.satellite(row.prn);
    const double range = project_to_range(1.0, sat.angles.elevation, sc.signal.code_rate_hz);
    const double rate = project_to_range_rate(120.0, sat.angles.elevation, sc.signal.carrier_hz);
    t.add_row({std::to_string(row.prn), sat.angles.elevation_deg(), range, row.range_bias, rate,
               row.range_rate_bias});
    const std::string who = "table3 PRN " + std::to_string(row.prn);
    out.checks.push_back({who + " range bias", row.range_bias, range, kTable3Tolerance});
    out.checks.push_back({who + " range-rate bias", row.range_rate_bias, rate, kTable3Tolerance});
  }
  t.add_note("1 chip delay and 120 Hz Doppler on GPS L5");
  out.tables.push_back(std::move(t));
}

void reproduce_fig7(ReproductionReport& out) {
  const ExperimentReport sweep = run_elevation_sweep(1.0, 120.0, {0.0, 89.0, 0.5}, presets::l5_signal());
  ResultTable data("fig7_data", sweep.records.columns());
  for (const auto& row : sweep.records.rows()) data.add_row(row);
  const double range0 = sweep.records.number(0, "range_bias");
  const double rate0 = sweep.records.number(0, "range_rate_bias");
  out.checks.push_back({"fig7 horizon range bias", kHorizonRange, range0, kHorizonTolerance});
  out.checks.push_back({"fig7 horizon range-rate bias", kHorizonRangeRate, rate0, kHorizonTolerance});
  out.checks.push_back({"fig7 range bias strictly increasing", 1.0,
                        sweep.summary_value("range_strictly_increasing"), 0.0});
  out.checks.push_back({"fig7 range-rate bias strictly increasing", 1.0,
                        sweep.summary_value("range_rate_strictly_increasing"), 0.0});
  data.add_note("1 chip delay and 120 Hz Doppler on GPS L5");
  out.tables.push_back(std::move(data));
}

void reproduce_pair_tables(ReproductionReport& out, const ReproductionOptions& options) {
  const Scenario table1 = presets::table1();
  for (const PairColumn& col : kPairs) {
    const double sep = azimuth_separation(table1.satellite(col.prn_i).angles.azimuth,
                                          table1.satellite(col.prn_j).angles.azimuth);
    out.checks.push_back({std::string("table4 ") + col.label + " separation", col.published_separation_deg, deg(sep),
                          col.separation_tolerance_deg});
  }
  for (Space space : {Space::Position, Space::Velocity}) {
    const bool position = space == Space::Position;
    const std::string unit = position ? "m" : "m/s";
    const std::string name = position ? "table4" : "table5";
    ResultTable t(name, {{"case", "-"},
                         {"point", "-"},
                         {"pair", "-"},
                         {"delta_theta", "deg"},
                         {"delta_theta_published", "deg"},
                         {"theoretical", unit},
                         {"theoretical_published", unit},
                         {"grid", unit},
                         {"simulated_published", unit}});
    for (int c = 1; c <= 3; ++c) {
      const std::array<double, 4> radii = presets::case_radii(c);
      auto radius_of = [&](int prn) {
        for (std::size_t i = 0; i < presets::kSatellites.size(); ++i) {
          if (presets::kSatellites[i].prn == prn) return radii[i];
        }
        return 0.0;
      };
      CaseStudyConfig cfg;
      cfg.grid = position ? GridSpec::position_default() : GridSpec::velocity_default();
      cfg.exec = options.exec;
      const ExperimentReport study = run_case_study(presets::bound_case(c), cfg);

      for (std::size_t k = 0; k < kPairs.size(); ++k) {
        const PairColumn& col = kPairs[k];
        const PairValue& published = kPairTable[c - 1][k];
        if (std::isnan(published.theoretical)) continue;
        const double az_i = table1.satellite(col.prn_i).angles.azimuth;
        const double az_j = table1.satellite(col.prn_j).angles.azimuth;
        const double ri = radius_of(col.prn_i), rj = radius_of(col.prn_j);
        const BiasResult r = position ? pair_bias(ri, rj, az_i, az_j) : pair_bias_velocity(ri, rj, az_i, az_j);
        const std::string pair = std::to_string(col.prn_i) + "/" + std::to_string(col.prn_j);
        double grid = kNone;
        for (std::size_t row = 0; row < study.records.rows().size(); ++row) {
          if (std::get<std::string>(study.records.rows()[row][0]) == pair) {
            grid = study.records.number(row, "grid_dr");
          }
        }
        t.add_row({"case" + std::to_string(c), col.label, pair, deg(r.delta_theta),
                   col.published_separation_deg, r.dr, published.theoretical, grid, published.simulated});
        out.checks.push_back({name + " case" + std::to_string(c) + " " + col.label + " theoretical",
                              published.theoretical, r.dr, col.tolerance});
      }
      for (const Check& check : study.checks) {
        Check prefixed = check;
        prefixed.name = name + " case" + std::to_string(c) + " grid " + check.name;
        out.checks.push_back(std::move(prefixed));
      }
    }
    t.add_note("grid column: noiseless grid argmax over the two contributing ridges");
    out.tables.push_back(std::move(t));
  }
}

void reproduce_montecarlo(ReproductionReport& out, const ReproductionOptions& options) {
  AzimuthMcConfig cfg;
  cfg.trials = options.trials;
  cfg.seed = options.seed;
  cfg.exec = options.exec;
  const ExperimentReport pos = run_random_azimuth_mc(kMcRadiusI, kMcRadiusJ, cfg);
  cfg.space = Space::Velocity;
  const ExperimentReport vel = run_random_azimuth_mc(kMcRadiusI, kMcRadiusJ, cfg);

  const double expected_argmin = deg(critical_points(kMcRadiusI, kMcRadiusJ).delta_theta);
  for (const auto* rep : {&pos, &vel}) {
    const std::string tag = rep == &pos ? "montecarlo position" : "montecarlo velocity";
    out.checks.push_back({tag + " min", kMcRadiusI, rep->summary_value("min_dr"),
                          kMcMinRelTolerance * kMcRadiusI});
    out.checks.push_back({tag + " argmin separation", expected_argmin,
                          rep->summary_value("argmin_delta_theta_deg"), kMcArgminToleranceDeg});
    out.checks.push_back({tag + " samples below floor", 0.0, rep->summary_value("samples_below_floor"), 0.0});
  }

  ResultTable fig10("fig10_data", {{"trial", "-"}, {"dx", "m"}, {"dy", "m"}, {"dx_dot", "m/s"},
                                   {"dy_dot", "m/s"}, {"in_window", "-"}});
  ResultTable fig11("fig11_data", {{"delta_theta", "deg"}, {"dr", "m"}, {"dr_dot", "m/s"}});
  std::vector<std::size_t> order(pos.records.rows().size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = i;
    fig10.add_row({static_cast<double>(i), pos.records.number(i, "dx"), pos.records.number(i, "dy"),
                   vel.records.number(i, "dx"), vel.records.number(i, "dy"),
                   pos.records.number(i, "in_window")});
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pos.records.number(a, "delta_theta") < pos.records.number(b, "delta_theta");
  });
  for (std::size_t i : order) {
    fig11.add_row({pos.records.number(i, "delta_theta"), pos.records.number(i, "dr"),
                   vel.records.number(i, "dr")});
  }
  fig10.add_note("radii 60 and 40; window +-100 flags points only");
  out.tables.push_back(std::move(fig10));
  out.tables.push_back(std::move(fig11));
}

void reproduce_fig8(ReproductionReport& out) {
  AzimuthMcConfig cfg;
  cfg.trials = 179;
  cfg.sampling = AzimuthSampling::Sweep;
  const ExperimentReport one = run_random_azimuth_mc(40.0, 0.0, cfg);
  const ExperimentReport equal = run_random_azimuth_mc(40.0, 40.0, cfg);
  ResultTable t("fig8_data", {{"delta_theta", "deg"}, {"case1_dr", "m"}, {"case2_dr", "m"}});
  for (std::size_t i = 0; i < one.records.rows().size(); ++i) {
    t.add_row({one.records.number(i, "delta_theta"), one.records.number(i, "dr"),
               equal.records.number(i, "dr")});
  }
  t.add_note("radius 40; velocity curves are numerically identical");
  out.tables.push_back(std::move(t));
}

void reproduce_table6(ReproductionReport& out, const ReproductionOptions& options) {
  const Scenario sc = presets::field_replay();
  const SatelliteChannel& nlos = sc.satellite(18);
  const SatelliteChannel& los = sc.satellite(23);
  const CenterLine pos_line = center_line(nlos, 0, Space::Position, sc);
  const CenterLine vel_line = center_line(nlos, 0, Space::Velocity, sc);
  const double dr = pair_bias(pos_line.tangent_offset, 0.0, nlos.angles.azimuth, los.angles.azimuth).dr;
  const double dr_dot =
      pair_bias_velocity(vel_line.tangent_offset, 0.0, nlos.angles.azimuth, los.angles.azimuth).dr;
  const std::array<double, 4> computed{pos_line.tangent_offset, dr, vel_line.tangent_offset, dr_dot};

  ResultTable t("table6", {{"quantity", "-"}, {"unit", "-"}, {"theoretical", "-"},
                           {"theoretical_published", "-"}, {"field_published", "-"}});
  for (std::size_t i = 0; i < kTable6.size(); ++i) {
    t.add_row({kTable6[i].quantity, kTable6[i].unit, computed[i], kTable6[i].theoretical, kTable6[i].field});
    out.checks.push_back({std::string("table6 ") + kTable6[i].quantity, kTable6[i].theoretical, computed[i],
                          kTable6Tolerance});
  }
  t.add_note("field_published comes from a recording that is not part of this project");

  for (Space space : {Space::Position, Space::Velocity}) {
    CaseStudyConfig cfg;
    cfg.grid = space == Space::Position ? GridSpec::position_default() : GridSpec::velocity_default();
    cfg.exec = options.exec;
    const ExperimentReport oracle = run_oracle_compare(sc, cfg);
    for (const Check& c : oracle.checks) {
      Check prefixed = c;
      prefixed.name = std::string("table6 ") + std::string(to_string(space)) + " " + c.name;
      out.checks.push_back(std::move(prefixed));
    }
  }
  out.tables.push_back(std::move(t));
}

}  // namespace

bool ReproductionReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
}

ResultTable ReproductionReport::checks_table() const {
  ResultTable t("checks", {{"check", "-"}, {"expected", "-"}, {"actual", "-"}, {"tolerance", "-"},
                           {"status", "-"}});
  for (const Check& c : checks) {
    t.add_row({c.name, c.expected, c.actual, c.tolerance, c.pass() ? "PASS" : "FAIL"});
  }
  return t;
}

ReproductionReport run_reproductions(const ReproductionOptions& options) {
  ReproductionReport out;
  reproduce_table3(out);
  reproduce_fig7(out);
  reproduce_pair_tables(out, options);
  reproduce_montecarlo(out, options);
  reproduce_fig8(out);
  reproduce_table6(out, options);
  return out;
}

}  // namespace dpemp
