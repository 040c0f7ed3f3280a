#include "dpemp/scmb.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dpemp/constants.hpp"
#include "dpemp/error.hpp"

namespace dpemp {

namespace {

[[noreturn]] void throw_parallel(double azimuth_i, double azimuth_j) {
  std::ostringstream msg;
  msg << "azimuths " << azimuth_i * constants::kRadToDeg << " and "
      << azimuth_j * constants::kRadToDeg << " deg give parallel center lines";
  throw Error(ErrorKind::ParallelLines, msg.str());
}

BiasResult solve_pair(Space space, double bias_i, double bias_j, double azimuth_i,
                      double azimuth_j) {
  if (!std::isfinite(bias_i) || !std::isfinite(bias_j) || !std::isfinite(azimuth_i) ||
      !std::isfinite(azimuth_j)) {
    throw Error(ErrorKind::InvalidArgument, "pair bias inputs must be finite");
  }
  if (bias_i < 0.0 || bias_j < 0.0) throw Error(ErrorKind::InvalidArgument, "circle radii must be non-negative");
  const double separation = azimuth_separation(azimuth_i, azimuth_j);
  const double sin_sep = std::sin(separation);
  if (std::abs(sin_sep) < tolerances::kParallel) throw_parallel(azimuth_i, azimuth_j);

  // Lines sin(az) x + cos(az) y = side * bias, solved by Cramer's rule.
  const double si = std::sin(azimuth_i), ci = std::cos(azimuth_i);
  const double sj = std::sin(azimuth_j), cj = std::cos(azimuth_j);
  const double det = si * cj - ci * sj;
  const double oi = kMultipathSide * bias_i, oj = kMultipathSide * bias_j;

  BiasResult r;
  r.space = space;
  r.delta_theta = separation;
  r.dx = (oi * cj - oj * ci) / det;
  r.dy = (si * oj - sj * oi) / det;
  const double chord2 = bias_i * bias_i + bias_j * bias_j - 2.0 * bias_i * bias_j * std::cos(separation);
  r.dr = std::sqrt(std::max(0.0, chord2)) / sin_sep;
  return r;
}

}  // namespace

double project_to_range(double delay_chips, double elevation, double code_rate_hz) {
  validate_elevation(elevation);
  if (!(code_rate_hz > 0.0)) throw Error(ErrorKind::InvalidArgument, "code rate must be positive");
  return constants::kSpeedOfLight / code_rate_hz * delay_chips / std::cos(elevation);
}

double project_to_range_rate(double doppler_hz, double elevation, double carrier_hz) {
  validate_elevation(elevation);
  if (!(carrier_hz > 0.0)) throw Error(ErrorKind::InvalidArgument, "carrier must be positive");
  return constants::kSpeedOfLight / carrier_hz * doppler_hz / std::cos(elevation);
}

double azimuth_separation(double azimuth_i, double azimuth_j) {
  const double d = wrap_two_pi(azimuth_j - azimuth_i);
  return d > constants::kPi ? 2.0 * constants::kPi - d : d;
}

double delta_alpha(double azimuth_i, double azimuth_j) {
  const double sep = azimuth_separation(azimuth_i, azimuth_j);
  return sep <= constants::kPi / 2.0 ? sep : constants::kPi - sep;
}

CenterLine CenterLine::tangent(double azimuth, double radius, Space space, LineSource source) {
  CenterLine l;
  l.space = space;
  l.azimuth = wrap_two_pi(azimuth);
  l.tangent_offset = radius;
  l.offset = kMultipathSide * radius;
  l.source = source;
  return l;
}

double CenterLine::normal_east() const { return std::sin(azimuth); }
double CenterLine::normal_north() const { return std::cos(azimuth); }

std::optional<double> CenterLine::slope() const {
  if (std::abs(std::cos(azimuth)) < tolerances::kVerticalLine) return std::nullopt;
  return -std::tan(azimuth);
}

std::optional<double> CenterLine::intercept() const {
  const double c = std::cos(azimuth);
  if (std::abs(c) < tolerances::kVerticalLine) return std::nullopt;
  return offset / c;
}

double CenterLine::distance_to(double east, double north) const {
  return std::abs(normal_east() * east + normal_north() * north - offset);
}

BiasCircle bias_circle(const CenterLine& line) {
  return {std::abs(line.tangent_offset), line.source};
}

CenterLine center_line(const SatelliteChannel& channel, std::size_t path_index, Space space,
                       const Scenario& scenario) {
  if (path_index >= channel.paths.size()) {
    throw Error(ErrorKind::InvalidArgument, "path index out of range for PRN " +
                                                std::to_string(channel.prn));
  }
  const ChannelGeometry g = channel_geometry(channel, scenario);
  const double horizontal = std::hypot(g.east, g.north);
  if (horizontal <= tolerances::kZenithHorizontalNorm) {
    throw Error(ErrorKind::ZenithDegenerate, "PRN " + std::to_string(channel.prn) + " at zenith");
  }
  const double elevation = std::atan2(g.up, horizontal);
  const double azimuth = wrap_two_pi(std::atan2(g.east, g.north));
  const SignalPath& path = channel.paths[path_index];
  const double radius =
      space == Space::Position
          ? project_to_range(path.delay_chips, elevation, scenario.signal.code_rate_hz)
          : project_to_range_rate(path.doppler_hz, elevation, scenario.signal.carrier_hz);
  return CenterLine::tangent(azimuth, radius, space, {channel.prn, path_index});
}

std::vector<CenterLine> center_lines(const Scenario& scenario, Space space) {
  std::vector<CenterLine> lines;
  for (const auto& sat : scenario.satellites) {
    for (std::size_t p = 0; p < sat.paths.size(); ++p) {
      lines.push_back(center_line(sat, p, space, scenario));
    }
  }
  return lines;
}

EnuVector intersect_lines(const CenterLine& a, const CenterLine& b) {
  const double ae = a.normal_east(), an = a.normal_north();
  const double be = b.normal_east(), bn = b.normal_north();
  const double det = ae * bn - an * be;  // sin(az_a - az_b)
  if (std::abs(det) < tolerances::kParallel) throw_parallel(a.azimuth, b.azimuth);
  return {(a.offset * bn - b.offset * an) / det, (ae * b.offset - be * a.offset) / det, 0.0};
}

BiasResult pair_bias(double range_bias_i, double range_bias_j, double azimuth_i, double azimuth_j) {
  return solve_pair(Space::Position, range_bias_i, range_bias_j, azimuth_i, azimuth_j);
}

BiasResult pair_bias_velocity(double range_rate_bias_i, double range_rate_bias_j, double azimuth_i,
                              double azimuth_j) {
  return solve_pair(Space::Velocity, range_rate_bias_i, range_rate_bias_j, azimuth_i, azimuth_j);
}

CriticalPoint critical_points(double range_bias_i, double range_bias_j) {
  if (!(range_bias_i >= 0.0) || !(range_bias_j >= 0.0) || !std::isfinite(range_bias_i) ||
      !std::isfinite(range_bias_j)) {
    throw Error(ErrorKind::InvalidArgument, "range biases must be finite and non-negative");
  }
  if (range_bias_i == 0.0 && range_bias_j == 0.0) {
    throw Error(ErrorKind::UndefinedCriticalPoint, "both range biases are zero");
  }
  const double small = std::min(range_bias_i, range_bias_j);
  const double large = std::max(range_bias_i, range_bias_j);
  CriticalPoint cp;
  cp.dr_min = large;
  if (large - small <= tolerances::kEqualRadii * large) {
    cp.delta_theta = 0.0;
    cp.attained = false;
  } else {
    cp.delta_theta = std::acos(small / large);
  }
  return cp;
}

std::string_view to_string(BoundCase c) {
  switch (c) {
    case BoundCase::Case1: return "CASE1";
    case BoundCase::Case2: return "CASE2";
    case BoundCase::Case3: return "CASE3";
  }
  return "?";
}

ErrorBound case_bound(std::span<const double> radii) {
  if (radii.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "error bounds need at least two satellites");
  }
  std::vector<double> nonzero;
  for (double r : radii) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
      throw Error(ErrorKind::InvalidArgument, "radii must be finite and non-negative");
    }
    if (r > 0.0) nonzero.push_back(r);
  }
  if (nonzero.empty()) {
    throw Error(ErrorKind::InvalidArgument, "no satellite carries an NLOS radius");
  }
  std::sort(nonzero.begin(), nonzero.end());

  ErrorBound b;
  if (nonzero.size() == 1) {
    b.label = BoundCase::Case1;
    b.lower = nonzero.front();
    b.lower_attained = true;
    b.attained_at = constants::kPi / 2.0;
    return b;
  }
  const double largest = nonzero.back();
  const bool all_equal = nonzero.size() == radii.size() &&
                         largest - nonzero.front() <= tolerances::kEqualRadii * largest;
  if (all_equal) {
    b.label = BoundCase::Case2;
    b.lower = nonzero.front();
    b.lower_attained = false;
    b.attained_at = 0.0;
    return b;
  }
  b.label = BoundCase::Case3;
  const CriticalPoint cp = critical_points(nonzero[0], nonzero[1]);
  b.lower = nonzero[1];
  b.lower_attained = cp.attained;
  b.attained_at = cp.delta_theta;
  return b;
}

IntersectionSet enumerate_intersections(std::span<const CenterLine> lines) {
  IntersectionSet out;
  for (std::size_t a = 0; a < lines.size(); ++a) {
    for (std::size_t b = a + 1; b < lines.size(); ++b) {
      const CenterLine& la = lines[a];
      const CenterLine& lb = lines[b];
      if (la.source.prn == lb.source.prn) continue;  // same azimuth, never cross
      ++out.raw_count;
      EnuVector p;
      try {
        p = intersect_lines(la, lb);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ParallelLines) throw;
        out.parallel.emplace_back(la.source, lb.source);
        continue;
      }
      auto same = std::find_if(out.points.begin(), out.points.end(), [&](const BiasResult& r) {
        return std::hypot(r.dx - p.e, r.dy - p.n) < tolerances::kMerge;
      });
      if (same != out.points.end()) {
        for (const LineSource& s : {la.source, lb.source}) {
          if (std::find(same->contributors.begin(), same->contributors.end(), s) ==
              same->contributors.end()) {
            same->contributors.push_back(s);
          }
        }
        continue;
      }
      BiasResult r;
      r.space = la.space;
      r.contributors = {la.source, lb.source};
      r.delta_theta = azimuth_separation(la.azimuth, lb.azimuth);
      r.dx = p.e;
      r.dy = p.n;
      r.dr = std::hypot(p.e, p.n);
      out.points.push_back(std::move(r));
    }
  }
  return out;
}

std::size_t intersection_count(std::span<const std::size_t> paths_per_satellite) {
  std::size_t total = 0, squares = 0;
  for (std::size_t n : paths_per_satellite) {
    total += n;
    squares += n * n;
  }
  return (total * total - squares) / 2;
}

}  // namespace dpemp
