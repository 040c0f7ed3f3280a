#include "properties.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <random>

#include "dpemp/caf.hpp"
#include "dpemp/constants.hpp"
#include "dpemp/mc.hpp"
#include "dpemp/presets.hpp"
#include "dpemp/report.hpp"
#include "dpemp/scmb.hpp"
#include "oracles.hpp"

namespace props {

namespace {

using namespace dpemp;
constexpr double kPi = 3.14159265358979323846;
constexpr double kDeg = kPi / 180.0;

double rel(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

struct Tracker {
  Outcome out;
  double worst = 0.0;
  std::size_t cases = 0;

  explicit Tracker(std::string name) { out.name = std::move(name); }

  void expect(bool ok, const char* fmt, double a = 0.0, double b = 0.0) {
    ++cases;
    if (!ok && out.pass) {
      char buf[256];
      std::snprintf(buf, sizeof buf, fmt, a, b);
      out.pass = false;
      out.detail = buf;
    }
  }

  void close(double a, double b, double tol) {
    const double r = rel(a, b);
    worst = std::max(worst, r);
    expect(r <= tol, "%.17g vs %.17g", a, b);
  }

  Outcome done() {
    if (out.pass) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "%zu cases, worst rel %.3g", cases, worst);
      out.detail = buf;
    }
    return out;
  }
};

std::array<double, 3> arr(const EcefVector& v) { return {v.x, v.y, v.z}; }

// Satellite at given look angles with a single NLOS path of the given radius in
// both spaces.
SatelliteChannel nlos_channel(int prn, double el, double az, double radius, const Scenario& sc) {
  const double c = std::cos(el);
  const SignalPath p = SignalPath::nlos(radius * c / sc.signal.chip_length_m(),
                                        radius * c / sc.signal.carrier_wavelength_m());
  return make_channel(prn, LookAngles{el, az}, sc.receiver_position, {p});
}

}  // namespace

Outcome tangency() {
  Tracker t("tangency");
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> az(0.0, 2.0 * kPi), el(1.0 * kDeg, 85.0 * kDeg),
      delay(0.05, 2.0), dopp(5.0, 300.0);
  Scenario sc = presets::table1();
  for (int k = 0; k < 500; ++k) {
    const double e = el(gen), a = az(gen);
    const SatelliteChannel ch = make_channel(
        1, LookAngles{e, a}, sc.receiver_position, {SignalPath::nlos(delay(gen), dopp(gen))});
    sc.satellites = {ch};
    // The true slant elevation after ECEF synthesis, from the oracle frame.
    const oracle::Enu s = oracle::ecef_to_enu(arr(ch.position), arr(sc.receiver_position));
    const double el_true = std::atan2(s.u, std::hypot(s.e, s.n));
    const double r_pos = oracle::projected_bias(ch.paths[0].delay_chips, sc.signal.code_rate_hz, el_true);
    const double r_vel = oracle::projected_bias(ch.paths[0].doppler_hz, sc.signal.carrier_hz, el_true);
    for (auto [space, radius] : {std::pair{Space::Position, r_pos}, std::pair{Space::Velocity, r_vel}}) {
      const CenterLine line = center_line(ch, 0, space, sc);
      t.close(std::abs(line.distance_to(0.0, 0.0)), radius, 1e-9);
      t.close(bias_circle(line).radius, radius, 1e-9);
      // the correlation ridge sits on the line: unit correlation at the foot point
      const EnuVector on{line.offset * line.normal_east(), line.offset * line.normal_north(), 0.0};
      const double peak = channel_correlation(on, space, ch, channel_geometry(ch, sc), sc.signal);
      t.expect(std::abs(peak - 1.0) < 1e-6, "ridge correlation %.17g", peak);
    }
  }
  return t.done();
}

Outcome lower_bound(std::size_t draws) {
  Tracker t("lower bound dr >= max radius");
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> radius(0.0, 100.0), sep(1e-3, kPi - 1e-3), az(0.0, 2.0 * kPi);
  for (std::size_t k = 0; k < draws; ++k) {
    const double ri = radius(gen), rj = radius(gen), ai = az(gen);
    const double dth = sep(gen);
    const BiasResult b = pair_bias(ri, rj, ai, ai + dth);
    const double floor = std::max(ri, rj);
    t.expect(b.dr >= floor * (1.0 - 1e-12) - 1e-12, "dr %.17g below %.17g", b.dr, floor);
    const BiasResult v = pair_bias_velocity(ri, rj, ai, ai - dth);
    t.expect(v.dr >= floor * (1.0 - 1e-12) - 1e-12, "velocity dr %.17g below %.17g", v.dr, floor);
  }
  return t.done();
}

Outcome closed_form_reductions() {
  Tracker t("closed-form reductions");
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> radius(0.1, 100.0), sep(0.01, kPi - 0.01), az(0.0, 2.0 * kPi);
  for (int k = 0; k < 20000; ++k) {
    const double r = radius(gen), dth = sep(gen), ai = az(gen);
    // one nonzero radius: r / sin
    t.close(pair_bias(r, 0.0, ai, ai + dth).dr, r / std::sin(dth), 1e-12);
    t.close(pair_bias_velocity(0.0, r, ai, ai + dth).dr, r / std::sin(dth), 1e-12);
    // equal radii: r sec(half angle)
    t.close(pair_bias(r, r, ai, ai + dth).dr, r / std::cos(dth / 2.0), 1e-12);
    t.close(pair_bias_velocity(r, r, ai, ai + dth).dr, r / std::cos(dth / 2.0), 1e-12);
  }
  return t.done();
}

Outcome chord_identity() {
  // Tangent points T_i, T_j and the truth O lie on the circle with diameter OP,
  // so |T_i T_j| = |OP| sin(dtheta).
  Tracker t("chord identity");
  std::mt19937_64 gen(14);
  std::uniform_real_distribution<double> radius(0.5, 100.0), sep(0.05, kPi - 0.05), az(0.0, 2.0 * kPi);
  for (int k = 0; k < 20000; ++k) {
    const double ri = radius(gen), rj = radius(gen), ai = az(gen), aj = ai + sep(gen);
    const CenterLine li = CenterLine::tangent(ai, ri), lj = CenterLine::tangent(aj, rj);
    const EnuVector p = intersect_lines(li, lj);
    const double ti[2] = {li.offset * li.normal_east(), li.offset * li.normal_north()};
    const double tj[2] = {lj.offset * lj.normal_east(), lj.offset * lj.normal_north()};
    const double chord = std::hypot(ti[0] - tj[0], ti[1] - tj[1]);
    const double op = std::hypot(p.e, p.n);
    t.close(chord, op * std::abs(std::sin(aj - ai)), 1e-12);
    // OP is a diameter: P sees each tangent point at a right angle to O
    const double dot = (ti[0]) * (p.e - ti[0]) + (ti[1]) * (p.n - ti[1]);
    t.expect(std::abs(dot) <= 1e-9 * op * op, "right angle residual %.3g", dot);
    t.close(pair_bias(ri, rj, ai, aj).dr, op, 1e-12);
  }
  return t.done();
}

Outcome alpha_branches() {
  Tracker t("delta alpha branches");
  std::mt19937_64 gen(15);
  std::uniform_real_distribution<double> az(0.0, 2.0 * kPi);
  for (int k = 0; k < 20000; ++k) {
    const double ai = az(gen), aj = az(gen);
    const double dth = azimuth_separation(ai, aj);
    const double da = delta_alpha(ai, aj);
    t.expect(da >= 0.0 && da <= kPi / 2.0, "delta alpha %.17g out of range", da);
    t.close(da, dth <= kPi / 2.0 ? dth : kPi - dth, 1e-15);
    // the slope form is singular near vertical lines
    if (std::abs(std::cos(ai)) > 1e-3 && std::abs(std::cos(aj)) > 1e-3 && da > 1e-6) {
      const double ref = oracle::line_angle(ai, aj);
      t.expect(std::abs(da - ref) < 1e-8, "%.17g vs slope form %.17g", da, ref);
    }
  }
  t.close(delta_alpha(0.0, 15.9 * kDeg), 15.9 * kDeg, 1e-12);
  t.close(delta_alpha(0.0, 122.3 * kDeg), 57.7 * kDeg, 1e-12);
  t.close(delta_alpha(0.0, 90.0 * kDeg), 90.0 * kDeg, 1e-12);
  return t.done();
}

Outcome intersection_count() {
  Tracker t("intersection count");
  std::mt19937_64 gen(16);
  std::uniform_int_distribution<std::size_t> sats(2, 7), paths(1, 4);
  std::uniform_real_distribution<double> az(0.0, 2.0 * kPi), radius(0.0, 50.0);
  for (int k = 0; k < 300; ++k) {
    std::vector<std::size_t> counts(sats(gen));
    std::vector<CenterLine> lines;
    for (std::size_t s = 0; s < counts.size(); ++s) {
      counts[s] = paths(gen);
      const double a = az(gen);
      for (std::size_t p = 0; p < counts[s]; ++p) {
        lines.push_back(CenterLine::tangent(a, radius(gen), Space::Position,
                                            LineSource{static_cast<int>(s + 1), p}));
      }
    }
    const std::size_t brute = oracle::brute_force_pairs(counts);
    const std::size_t formula = dpemp::intersection_count(counts);
    const IntersectionSet set = enumerate_intersections(lines);
    t.expect(formula == brute, "formula %.0f vs brute force %.0f", double(formula), double(brute));
    t.expect(set.raw_count == brute, "enumerated %.0f vs brute force %.0f", double(set.raw_count), double(brute));
    // generic radii: no coincident points, so every non-parallel pair survives
    t.expect(set.points.size() + set.parallel.size() == brute, "distinct %.0f vs %.0f",
             double(set.points.size() + set.parallel.size()), double(brute));
  }
  return t.done();
}

Outcome argmax_oracle(std::size_t scenarios) {
  // Two NLOS-only satellites; the grid peak must fall within one grid step
  // (Chebyshev) of where both correlation ridges cross. Separations stay in
  // [30, 150] deg: shallower crossings stretch the triangle ridges into long
  // parallelograms and the discrete peak legitimately drifts further.
  Tracker t("argmax vs analytic");
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> az(0.0, 2.0 * kPi), el(10.0 * kDeg, 75.0 * kDeg),
      sep(30.0 * kDeg, 150.0 * kDeg), radius(5.0, 35.0), sign(-1.0, 1.0);
  double worst = 0.0;
  for (std::size_t k = 0; k < scenarios; ++k) {
    Scenario sc = presets::table1();
    double ri = 0.0, rj = 0.0, ai = 0.0, aj = 0.0;
    do {  // keep the crossing well inside the +/-100 window
      ri = radius(gen);
      rj = radius(gen);
      ai = az(gen);
      aj = wrap_two_pi(ai + (sign(gen) < 0 ? -1.0 : 1.0) * sep(gen));
    } while (pair_bias(ri, rj, ai, aj).dr > 90.0);
    sc.satellites = {nlos_channel(1, el(gen), ai, ri, sc), nlos_channel(2, el(gen), aj, rj, sc)};
    for (Space space : {Space::Position, Space::Velocity}) {
      const GridSpec spec{space, 100.0, 1.0};
      const GridEstimate est = superpose_and_argmax(scenario_caf(spec, sc));
      double az_true[2], off[2];
      for (int s = 0; s < 2; ++s) {
        const SatelliteChannel& ch = sc.satellites[s];
        const oracle::Enu u = oracle::ecef_to_enu(arr(ch.position), arr(sc.receiver_position));
        const double el_true = std::atan2(u.u, std::hypot(u.e, u.n));
        az_true[s] = std::atan2(u.e, u.n);
        off[s] = kMultipathSide *
                 (space == Space::Position
                      ? oracle::projected_bias(ch.paths[0].delay_chips, sc.signal.code_rate_hz, el_true)
                      : oracle::projected_bias(ch.paths[0].doppler_hz, sc.signal.carrier_hz, el_true));
      }
      const auto p = oracle::line_intersection(az_true[0], off[0], az_true[1], off[1]);
      const double cheb = std::max(std::abs(est.estimate.e - p[0]), std::abs(est.estimate.n - p[1]));
      worst = std::max(worst, cheb);
      t.expect(cheb <= spec.step * (1.0 + 1e-9), "grid peak %.3g steps from the crossing (scenario %.0f)", cheb,
               double(k));
    }
  }
  Outcome o = t.done();
  if (o.pass) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%zu scenarios x 2 spaces, worst offset %.3f steps", scenarios, worst);
    o.detail = buf;
  }
  return o;
}

Outcome deviation_linearity() {
  Tracker t("deviation linearity");
  std::mt19937_64 gen(18);
  std::uniform_real_distribution<double> az(0.0, 2.0 * kPi), el(1.0 * kDeg, 85.0 * kDeg), x(-100.0, 100.0),
      h(1e-3, 10.0);
  const Scenario base = presets::table1();
  for (int k = 0; k < 2000; ++k) {
    const SatelliteChannel ch = make_channel(1, LookAngles{el(gen), az(gen)}, base.receiver_position,
                                             {SignalPath::los()});
    const ChannelGeometry g = channel_geometry(ch, base);
    const oracle::Enu u = oracle::ecef_to_enu(arr(ch.position), arr(base.receiver_position));
    const double r = std::sqrt(u.e * u.e + u.n * u.n + u.u * u.u);
    const EnuVector p{x(gen), x(gen), 0.0};
    const double step = h(gen);
    for (Space space : {Space::Position, Space::Velocity}) {
      const double f = space == Space::Position ? base.signal.code_rate_hz : base.signal.carrier_hz;
      const auto dev = [&](const EnuVector& q) {
        return space == Space::Position ? delta_tau0(q, g, base.signal) : delta_fd0(q, g, base.signal);
      };
      // finite differences against the analytic gradient -(f/c)(e, n)/r
      const double ge = -(f / 299792458.0) * u.e / r, gn = -(f / 299792458.0) * u.n / r;
      const double fe = (dev({p.e + step, p.n, 0.0}) - dev(p)) / step;
      const double fn = (dev({p.e, p.n + step, 0.0}) - dev(p)) / step;
      // differences of nearly equal values lose digits; scale by the operand size
      const double scale = std::abs(dev(p)) / step + std::abs(ge) + std::abs(gn);
      t.expect(std::abs(fe - ge) <= 1e-9 * scale, "east slope %.17g vs %.17g", fe, ge);
      t.expect(std::abs(fn - gn) <= 1e-9 * scale, "north slope %.17g vs %.17g", fn, gn);
      // superposition, and zero at the truth
      const EnuVector q{x(gen), x(gen), 0.0};
      t.close(dev({p.e + q.e, p.n + q.n, 0.0}), dev(p) + dev(q), 1e-9);
      t.expect(dev({0.0, 0.0, 0.0}) == 0.0, "deviation at truth %.17g", dev({0.0, 0.0, 0.0}));
    }
  }
  return t.done();
}

Outcome serial_parallel_identity(std::size_t trials) {
  Tracker t("serial vs parallel identity");
  ReproductionOptions serial{7, trials, Execution{1}};
  ReproductionOptions parallel{7, trials, Execution{4}};
  const ReproductionReport a = run_reproductions(serial);
  const ReproductionReport b = run_reproductions(parallel);
  t.expect(a.tables.size() == b.tables.size(), "table count %.0f vs %.0f", double(a.tables.size()),
           double(b.tables.size()));
  for (std::size_t i = 0; i < std::min(a.tables.size(), b.tables.size()); ++i) {
    t.expect(bitwise_equal(a.tables[i], b.tables[i]), "table %.0f differs", double(i));
  }
  t.expect(bitwise_equal(a.checks_table(), b.checks_table()), "checks differ");

  Scenario noisy = presets::bound_case(3);
  noisy.noise_sigma = 0.05;
  noisy.seed = 99;
  const GridSpec spec{Space::Position, 60.0, 1.0};
  const auto ga = scenario_caf(spec, noisy, Execution{1});
  const auto gb = scenario_caf(spec, noisy, Execution{5});
  bool same = ga.size() == gb.size();
  for (std::size_t i = 0; same && i < ga.size(); ++i) {
    for (std::size_t c = 0; same && c < ga[i].values.size(); ++c) {
      same = std::bit_cast<std::uint64_t>(ga[i].values[c]) == std::bit_cast<std::uint64_t>(gb[i].values[c]);
    }
  }
  t.expect(same, "noisy grid differs between thread counts");
  return t.done();
}

std::vector<Outcome> all() {
  return {tangency(),      lower_bound(),          closed_form_reductions(), chord_identity(),
          alpha_branches(), intersection_count(),  argmax_oracle(),          deviation_linearity(),
          serial_parallel_identity()};
}

}  // namespace props
