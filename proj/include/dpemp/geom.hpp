#pragma once

#include <cmath>

namespace dpemp {

/// Earth-centered Earth-fixed vector, meters (or m/s for velocities).
struct EcefVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend EcefVector operator+(const EcefVector& a, const EcefVector& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend EcefVector operator-(const EcefVector& a, const EcefVector& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend EcefVector operator*(double s, const EcefVector& a) { return {s * a.x, s * a.y, s * a.z}; }
  friend bool operator==(const EcefVector&, const EcefVector&) = default;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

/// East-North-Up vector relative to a declared origin.
struct EnuVector {
  double e = 0.0;
  double n = 0.0;
  double u = 0.0;

  friend EnuVector operator+(const EnuVector& a, const EnuVector& b) {
    return {a.e + b.e, a.n + b.n, a.u + b.u};
  }
  friend EnuVector operator-(const EnuVector& a, const EnuVector& b) {
    return {a.e - b.e, a.n - b.n, a.u - b.u};
  }
  friend EnuVector operator*(double s, const EnuVector& a) { return {s * a.e, s * a.n, s * a.u}; }
  friend bool operator==(const EnuVector&, const EnuVector&) = default;

  double norm() const { return std::sqrt(e * e + n * n + u * u); }
  double horizontal_norm() const { return std::hypot(e, n); }
  bool finite() const { return std::isfinite(e) && std::isfinite(n) && std::isfinite(u); }
};

/// Satellite look angles. Elevation in [0, pi/2 - zenith guard), azimuth in [0, 2 pi)
/// clockwise from North.
struct LookAngles {
  double elevation = 0.0;  // [rad]
  double azimuth = 0.0;    // [rad]

  static LookAngles from_degrees(double elevation_deg, double azimuth_deg);
  double elevation_deg() const;
  double azimuth_deg() const;
};

/// Throws ZenithDegenerate or BelowHorizon when the elevation is outside the usable band.
void validate_elevation(double elevation);

/// Geodetic latitude/longitude [rad] and ellipsoidal height [m] on WGS-84.
struct Geodetic {
  double latitude = 0.0;
  double longitude = 0.0;
  double height = 0.0;
};

Geodetic ecef_to_geodetic(const EcefVector& p);

/// Expresses `point` in the local tangent frame at `origin`.
EnuVector ecef_to_enu(const EcefVector& point, const EcefVector& origin);
EcefVector enu_to_ecef(const EnuVector& local, const EcefVector& origin);

/// Rotates a difference vector (velocity, baseline) into the ENU axes at `origin`.
EnuVector ecef_delta_to_enu(const EcefVector& delta, const EcefVector& origin);

LookAngles look_angles(const EnuVector& sat_enu);

/// ENU point at `range` meters along the given look direction.
EnuVector enu_from_look_angles(const LookAngles& angles, double range);

double slant_range(const EcefVector& sat, const EcefVector& rcv);

/// Wraps an angle into [0, 2 pi).
double wrap_two_pi(double angle);

}  // namespace dpemp
