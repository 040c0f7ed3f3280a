#include "dpemp/presets.hpp"

#include <cmath>
#include <string>

#include "dpemp/error.hpp"

namespace dpemp::presets {

namespace {

Scenario base() {
  Scenario s;
  s.receiver_position = kReceiverPosition;
  s.receiver_velocity = kReceiverVelocity;
  s.signal = l5_signal();
  return s;
}

}  // namespace

std::array<double, 4> case_radii(int case_id) {
  switch (case_id) {
    case 1: return {0.0, 40.0, 0.0, 0.0};
    case 2: return {40.0, 40.0, 40.0, 40.0};
    case 3: return {60.0, 40.0, 30.0, 15.0};
    default: throw Error(ErrorKind::InvalidArgument, "case id must be 1, 2 or 3");
  }
}

SignalConfig l5_signal() { return {10.23e6, 1176.45e6, 30.69e6, 0.02}; }

Scenario table1() {
  Scenario s = base();
  for (const auto& a : kSatellites) {
    s.satellites.push_back(make_channel(a.prn, LookAngles::from_degrees(a.elevation_deg, a.azimuth_deg),
                                        s.receiver_position, {SignalPath::los()}));
  }
  return s;
}

Scenario bound_case(int case_id) {
  const std::array<double, 4> radii = case_radii(case_id);
  Scenario s = table1();
  for (std::size_t i = 0; i < s.satellites.size(); ++i) {
    SatelliteChannel& sat = s.satellites[i];
    if (radii[i] == 0.0) continue;
    // Invert the elevation projection on the synthesized geometry so the radius is exact.
    const double cos_el = std::cos(sat.angles.elevation);
    const double delay = radii[i] * cos_el / s.signal.chip_length_m();
    const double doppler = radii[i] * cos_el / s.signal.carrier_wavelength_m();
    sat.paths = {SignalPath::nlos(delay, doppler)};
  }
  return s;
}

Scenario field_replay() {
  Scenario s = base();
  for (const auto& a : kSatellites) {
    if (a.prn != 18 && a.prn != 23) continue;
    std::vector<SignalPath> paths = {SignalPath::los()};
    if (a.prn == 18) paths = {SignalPath::nlos(1.0, 120.3)};
    s.satellites.push_back(make_channel(a.prn, LookAngles::from_degrees(a.elevation_deg, a.azimuth_deg),
                                        s.receiver_position, std::move(paths)));
  }
  return s;
}

Scenario by_name(std::string_view name) {
  if (name == "table1") return table1();
  if (name == "case1") return bound_case(1);
  if (name == "case2") return bound_case(2);
  if (name == "case3") return bound_case(3);
  if (name == "table6") return field_replay();
  throw Error(ErrorKind::InvalidArgument, "unknown preset '" + std::string(name) + "'");
}

std::vector<std::string_view> names() { return {"table1", "case1", "case2", "case3", "table6"}; }

}  // namespace dpemp::presets
