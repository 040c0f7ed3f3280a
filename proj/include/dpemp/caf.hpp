#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "dpemp/geom.hpp"

namespace dpemp {

struct SignalConfig {
  double code_rate_hz = 10.23e6;
  double carrier_hz = 1176.45e6;
  double sample_rate_hz = 30.69e6;  // recorded only, nothing samples the signal
  double coherent_time_s = 0.02;

  void validate() const;
  double chip_length_m() const;       // c / f_c
  double carrier_wavelength_m() const;  // c / f_L
};

enum class PathKind { Los, Nlos };

struct SignalPath {
  PathKind kind = PathKind::Los;
  double amplitude = 1.0;
  double delay_chips = 0.0;
  double doppler_hz = 0.0;

  static SignalPath los(double amplitude = 1.0) { return {PathKind::Los, amplitude, 0.0, 0.0}; }
  static SignalPath nlos(double delay_chips, double doppler_hz, double amplitude = 1.0) {
    return {PathKind::Nlos, amplitude, delay_chips, doppler_hz};
  }
};

struct SatelliteChannel {
  int prn = 0;
  EcefVector position;  // [m]
  EcefVector velocity;  // [m/s]
  LookAngles angles;
  std::vector<SignalPath> paths;  // index 0 is the LOS path when one is present
};

struct Scenario {
  EcefVector receiver_position;
  EcefVector receiver_velocity;
  SignalConfig signal;
  std::vector<SatelliteChannel> satellites;
  double noise_sigma = 0.0;  // post-correlation, correlation units; 0 disables noise
  std::uint64_t seed = 0;

  /// Checks every invariant except angle/position consistency (see scenario_io).
  void validate() const;
  const SatelliteChannel& satellite(int prn) const;
};

/// Places a satellite at `range` meters along the given look angles from the receiver.
SatelliteChannel make_channel(int prn, const LookAngles& angles, const EcefVector& receiver,
                              std::vector<SignalPath> paths, double range = 2.2e7);

enum class Space { Position, Velocity };

std::string_view to_string(Space space);
Space space_from_string(std::string_view name);

/// Square search grid centred on the truth. Samples per axis are always odd so the
/// truth is a node.
struct GridSpec {
  Space space = Space::Position;
  double half_extent = 100.0;  // [m] or [m/s]
  double step = 1.0;

  static GridSpec position_default() { return {Space::Position, 100.0, 1.0}; }
  static GridSpec velocity_default() { return {Space::Velocity, 100.0, 0.1}; }

  void validate() const;
  std::size_t half_count() const;
  std::size_t samples_per_axis() const { return 2 * half_count() + 1; }
  std::size_t cell_count() const { return samples_per_axis() * samples_per_axis(); }
  /// Offset from the truth of sample `i` along either axis.
  double coordinate(std::size_t i) const;
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Row-major grid: row index runs along North (or North velocity), column along East.
struct Grid2D {
  GridSpec spec;
  std::vector<double> values;

  explicit Grid2D(const GridSpec& s) : spec(s), values(s.cell_count(), 0.0) {}

  double& at(std::size_t row, std::size_t col) { return values[row * spec.samples_per_axis() + col]; }
  double at(std::size_t row, std::size_t col) const {
    return values[row * spec.samples_per_axis() + col];
  }
};

/// Worker count for grid evaluation and Monte Carlo loops. Results never depend on it.
struct Execution {
  unsigned threads = 1;
  static Execution hardware();
};

double corr_code(double delta_chips);
double corr_doppler(double delta_hz, double coherent_time_s);

/// Horizontal line-of-sight geometry of one channel, relative to the receiver truth.
struct ChannelGeometry {
  double east = 0.0;   // x^m - x  [m]
  double north = 0.0;  // y^m - y  [m]
  double up = 0.0;     // z^m - z  [m]
  double range = 0.0;  // r^m      [m]
};

ChannelGeometry channel_geometry(const SatelliteChannel& channel, const Scenario& scenario);

/// Code-delay deviation [chips] of a candidate position offset (E, N) from the truth.
double delta_tau0(const EnuVector& candidate_en, const SatelliteChannel& channel,
                  const Scenario& scenario);
double delta_tau0(const EnuVector& candidate_en, const ChannelGeometry& geometry,
                  const SignalConfig& signal);

/// Doppler deviation [Hz] of a candidate velocity offset (E, N) from the truth.
double delta_fd0(const EnuVector& candidate_vel_en, const SatelliteChannel& channel,
                 const Scenario& scenario);
double delta_fd0(const EnuVector& candidate_vel_en, const ChannelGeometry& geometry,
                 const SignalConfig& signal);

/// Noiseless composite correlation of one channel at an arbitrary (E, N) offset.
double channel_correlation(const EnuVector& offset_en, Space space, const SatelliteChannel& channel,
                           const ChannelGeometry& geometry, const SignalConfig& signal);

Grid2D channel_caf(const GridSpec& spec, const SatelliteChannel& channel, const Scenario& scenario,
                   Execution exec = {});

/// One grid per satellite, in scenario order.
std::vector<Grid2D> scenario_caf(const GridSpec& spec, const Scenario& scenario, Execution exec = {});

struct GridEstimate {
  EnuVector estimate;  // offset from truth (u = 0)
  double peak = 0.0;
  std::size_t row = 0;
  std::size_t col = 0;
};

Grid2D superpose(std::span<const Grid2D> grids);
GridEstimate argmax(const Grid2D& grid);
GridEstimate superpose_and_argmax(std::span<const Grid2D> grids);

}  // namespace dpemp
