#include "dpemp/geom.hpp"

#include <array>
#include <sstream>

#include "dpemp/constants.hpp"
#include "dpemp/error.hpp"

namespace dpemp {

namespace {

using Rotation = std::array<std::array<double, 3>, 3>;

// Rows are the East, North and Up unit vectors expressed in ECEF.
Rotation enu_rotation(const EcefVector& origin) {
  const double norm = origin.norm();
  if (!origin.finite() || norm < constants::kMinOriginNorm || norm > constants::kMaxOriginNorm) {
    std::ostringstream msg;
    msg << "origin norm " << norm << " m is not an Earth-surface position";
    throw Error(ErrorKind::InvalidOrigin, msg.str());
  }
  const Geodetic g = ecef_to_geodetic(origin);
  const double sl = std::sin(g.latitude), cl = std::cos(g.latitude);
  const double so = std::sin(g.longitude), co = std::cos(g.longitude);
  return {{{-so, co, 0.0}, {-sl * co, -sl * so, cl}, {cl * co, cl * so, sl}}};
}

EnuVector rotate(const Rotation& r, const EcefVector& d) {
  return {r[0][0] * d.x + r[0][1] * d.y + r[0][2] * d.z,
          r[1][0] * d.x + r[1][1] * d.y + r[1][2] * d.z,
          r[2][0] * d.x + r[2][1] * d.y + r[2][2] * d.z};
}

}  // namespace

LookAngles LookAngles::from_degrees(double elevation_deg, double azimuth_deg) {
  return {elevation_deg * constants::kDegToRad, wrap_two_pi(azimuth_deg * constants::kDegToRad)};
}

double LookAngles::elevation_deg() const { return elevation * constants::kRadToDeg; }
double LookAngles::azimuth_deg() const { return azimuth * constants::kRadToDeg; }

void validate_elevation(double elevation) {
  if (!std::isfinite(elevation)) {
    throw Error(ErrorKind::InvalidArgument, "elevation is not finite");
  }
  if (elevation < 0.0) {
    std::ostringstream msg;
    msg << "elevation " << elevation * constants::kRadToDeg << " deg";
    throw Error(ErrorKind::BelowHorizon, msg.str());
  }
  if (elevation >= constants::kPi / 2.0 - tolerances::kZenithGuard) {
    std::ostringstream msg;
    msg << "elevation " << elevation * constants::kRadToDeg << " deg is inside the zenith guard";
    throw Error(ErrorKind::ZenithDegenerate, msg.str());
  }
}

Geodetic ecef_to_geodetic(const EcefVector& p) {
  using namespace constants;
  const double rho = std::hypot(p.x, p.y);
  Geodetic g;
  g.longitude = std::atan2(p.y, p.x);
  // Fixed-point iteration on latitude; converges to < 1e-15 rad in a handful of steps
  // for terrestrial heights.
  double lat = std::atan2(p.z, rho * (1.0 - kWgs84E2));
  double height = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double sl = std::sin(lat);
    const double n = kWgs84A / std::sqrt(1.0 - kWgs84E2 * sl * sl);
    height = rho / std::cos(lat) - n;
    const double next = std::atan2(p.z, rho * (1.0 - kWgs84E2 * n / (n + height)));
    const bool done = std::abs(next - lat) < 1e-15;
    lat = next;
    if (done) break;
  }
  g.latitude = lat;
  g.height = height;
  return g;
}

EnuVector ecef_to_enu(const EcefVector& point, const EcefVector& origin) {
  if (!point.finite()) throw Error(ErrorKind::InvalidArgument, "ECEF point has non-finite components");
  return rotate(enu_rotation(origin), point - origin);
}

EnuVector ecef_delta_to_enu(const EcefVector& delta, const EcefVector& origin) {
  return rotate(enu_rotation(origin), delta);
}

EcefVector enu_to_ecef(const EnuVector& local, const EcefVector& origin) {
  const Rotation r = enu_rotation(origin);
  const EcefVector d{r[0][0] * local.e + r[1][0] * local.n + r[2][0] * local.u,
                     r[0][1] * local.e + r[1][1] * local.n + r[2][1] * local.u,
                     r[0][2] * local.e + r[1][2] * local.n + r[2][2] * local.u};
  return origin + d;
}

LookAngles look_angles(const EnuVector& sat_enu) {
  if (!sat_enu.finite()) {
    throw Error(ErrorKind::InvalidArgument, "satellite ENU vector is not finite");
  }
  const double horizontal = sat_enu.horizontal_norm();
  if (horizontal <= tolerances::kZenithHorizontalNorm) {
    throw Error(ErrorKind::ZenithDegenerate, "horizontal component vanishes, azimuth undefined");
  }
  const double elevation = std::atan2(sat_enu.u, horizontal);
  validate_elevation(elevation);
  return {elevation, wrap_two_pi(std::atan2(sat_enu.e, sat_enu.n))};
}

EnuVector enu_from_look_angles(const LookAngles& angles, double range) {
  const double ce = std::cos(angles.elevation);
  return {range * ce * std::sin(angles.azimuth), range * ce * std::cos(angles.azimuth),
          range * std::sin(angles.elevation)};
}

double slant_range(const EcefVector& sat, const EcefVector& rcv) { return (sat - rcv).norm(); }

double wrap_two_pi(double angle) {
  constexpr double two_pi = 2.0 * constants::kPi;
  double w = std::fmod(angle, two_pi);
  if (w < 0.0) w += two_pi;
  if (w >= two_pi) w = 0.0;
  return w;
}

}  // namespace dpemp
