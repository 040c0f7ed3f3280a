#pragma once

#include <numbers>

namespace dpemp {

namespace constants {
constexpr double kSpeedOfLight = 299792458.0;  // [m/s]
constexpr double kPi = std::numbers::pi;
constexpr double kDegToRad = kPi / 180.0;
constexpr double kRadToDeg = 180.0 / kPi;

// WGS-84
constexpr double kWgs84A = 6378137.0;
constexpr double kWgs84F = 1.0 / 298.257223563;
constexpr double kWgs84E2 = kWgs84F * (2.0 - kWgs84F);

// Plausible Earth-surface origin radius [m]
constexpr double kMinOriginNorm = 6.2e6;
constexpr double kMaxOriginNorm = 6.6e6;
}  // namespace constants

namespace tolerances {
/// Elevations at or above 90 deg minus this guard are rejected (sec(elevation) diverges).
constexpr double kZenithGuard = 0.5 * constants::kDegToRad;
/// Below this horizontal norm [m] the azimuth is undefined.
constexpr double kZenithHorizontalNorm = 1e-6;
/// |sin(dtheta)| below this means the two center lines are treated as parallel.
constexpr double kParallel = 1e-6;
/// Intersections closer than this [m or m/s] are merged.
constexpr double kMerge = 1e-6;
/// Relative tolerance for "equal radii" in case classification.
constexpr double kEqualRadii = 1e-9;
/// Below this |cos(azimuth)| a center line has no finite slope.
constexpr double kVerticalLine = 1e-9;
}  // namespace tolerances

/// Side on which a delayed (or Doppler-shifted) path moves its correlation ridge,
/// measured along the horizontal unit vector pointing at the satellite.
/// -1 puts the ridge on the far side of the truth: a delayed path lengthens the
/// apparent range. Both the grid evaluator and the analytic center lines use it.
constexpr double kMultipathSide = -1.0;

}  // namespace dpemp
