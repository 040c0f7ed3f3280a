#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "dpemp/caf.hpp"

namespace dpemp::presets {

// 2022-09-03 08:04:47 UTC drive-test geometry (Lujiazui, Shanghai), GPS L5.

struct SatelliteAngles {
  int prn;
  double elevation_deg;
  double azimuth_deg;
};

inline constexpr EcefVector kReceiverPosition{-2851838.0, 4653607.0, 3289209.0};
inline constexpr EcefVector kReceiverVelocity{-5.5, -4.7, 1.9};
inline constexpr std::array<SatelliteAngles, 4> kSatellites{{
    {10, 35.4, 320.2},
    {18, 42.8, 213.8},
    {23, 66.7, 336.1},
    {24, 69.8, 45.1},
}};

/// Per-satellite NLOS radii [m] (and the same numbers in m/s) of the three bound cases,
/// in kSatellites order.
std::array<double, 4> case_radii(int case_id);

SignalConfig l5_signal();

/// Table geometry, every satellite on a single LOS path.
Scenario table1();

/// Same geometry with one path per satellite: LOS where the case radius is zero, otherwise
/// an NLOS path whose delay and Doppler project to exactly that radius.
Scenario bound_case(int case_id);

/// PRN 18 with a 1 chip / 120.3 Hz NLOS path paired with a LOS PRN 23.
Scenario field_replay();

/// Looks up a preset by name: table1, case1, case2, case3, table6.
Scenario by_name(std::string_view name);
std::vector<std::string_view> names();

}  // namespace dpemp::presets
