#include "dpemp/caf.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <string>

#include "dpemp/constants.hpp"
#include "dpemp/error.hpp"
#include "dpemp/rng.hpp"
#include "parallel.hpp"

namespace dpemp {

namespace {

constexpr std::size_t kMaxGridCells = 50'000'000;

std::uint64_t noise_stream(Space space, int prn) {
  return (static_cast<std::uint64_t>(space == Space::Velocity) << 32) ^
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(prn));
}

}  // namespace

void SignalConfig::validate() const {
  if (!(code_rate_hz > 0.0) || !std::isfinite(code_rate_hz)) {
    throw Error(ErrorKind::InvalidArgument, "code rate must be positive");
  }
  if (!(carrier_hz > code_rate_hz) || !std::isfinite(carrier_hz)) {
    throw Error(ErrorKind::InvalidArgument, "carrier frequency must exceed the code rate");
  }
  if (!(coherent_time_s > 0.0) || !std::isfinite(coherent_time_s)) {
    throw Error(ErrorKind::InvalidArgument, "coherent integration time must be positive");
  }
}

double SignalConfig::chip_length_m() const { return constants::kSpeedOfLight / code_rate_hz; }
double SignalConfig::carrier_wavelength_m() const { return constants::kSpeedOfLight / carrier_hz; }

void Scenario::validate() const {
  if (!receiver_position.finite() || !receiver_velocity.finite()) {
    throw Error(ErrorKind::InvalidArgument, "receiver state is not finite");
  }
  signal.validate();
  if (satellites.empty()) {
    throw Error(ErrorKind::InvalidArgument, "scenario has no satellites");
  }
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw Error(ErrorKind::InvalidArgument, "noise sigma must be finite and non-negative");
  }
  std::set<int> prns;
  for (const auto& sat : satellites) {
    const std::string who = "PRN " + std::to_string(sat.prn);
    if (!prns.insert(sat.prn).second) {
      throw Error(ErrorKind::InvalidArgument, "duplicate " + who);
    }
    if (!sat.position.finite() || !sat.velocity.finite()) {
      throw Error(ErrorKind::InvalidArgument, who + " state is not finite");
    }
    if (sat.paths.empty()) {
      throw Error(ErrorKind::InvalidArgument, who + " has no signal paths");
    }
    validate_elevation(sat.angles.elevation);
    int los_count = 0;
    for (std::size_t i = 0; i < sat.paths.size(); ++i) {
      const SignalPath& p = sat.paths[i];
      if (!(p.amplitude >= 0.0) || !std::isfinite(p.amplitude) || !std::isfinite(p.delay_chips) ||
          !std::isfinite(p.doppler_hz)) {
        throw Error(ErrorKind::InvalidArgument, who + " has an invalid path");
      }
      if (p.kind == PathKind::Los) {
        ++los_count;
        if (i != 0) throw Error(ErrorKind::InvalidArgument, who + ": LOS path must be first");
        if (p.delay_chips != 0.0 || p.doppler_hz != 0.0) {
          throw Error(ErrorKind::InvalidArgument, who + ": LOS path carries a bias");
        }
      }
    }
    if (los_count > 1) throw Error(ErrorKind::InvalidArgument, who + " has several LOS paths");
  }
}

const SatelliteChannel& Scenario::satellite(int prn) const {
  auto it = std::find_if(satellites.begin(), satellites.end(),
                         [prn](const SatelliteChannel& s) { return s.prn == prn; });
  if (it == satellites.end()) {
    throw Error(ErrorKind::InvalidArgument, "no satellite with PRN " + std::to_string(prn));
  }
  return *it;
}

SatelliteChannel make_channel(int prn, const LookAngles& angles, const EcefVector& receiver,
                              std::vector<SignalPath> paths, double range) {
  validate_elevation(angles.elevation);
  SatelliteChannel ch;
  ch.prn = prn;
  ch.position = enu_to_ecef(enu_from_look_angles(angles, range), receiver);
  ch.angles = look_angles(ecef_to_enu(ch.position, receiver));
  ch.paths = std::move(paths);
  return ch;
}

std::string_view to_string(Space space) {
  return space == Space::Position ? "position" : "velocity";
}

Space space_from_string(std::string_view name) {
  if (name == "position") return Space::Position;
  if (name == "velocity") return Space::Velocity;
  throw Error(ErrorKind::InvalidArgument, "unknown space '" + std::string(name) + "'");
}

void GridSpec::validate() const {
  if (!(step > 0.0) || !(half_extent > 0.0) || !std::isfinite(step) || !std::isfinite(half_extent)) {
    throw Error(ErrorKind::InvalidArgument, "grid step and half extent must be positive");
  }
  const double ratio = half_extent / step;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio)) {
    throw Error(ErrorKind::InvalidArgument, "half extent must be an integer multiple of the step");
  }
  const double n = 2.0 * std::round(ratio) + 1.0;
  if (n * n > static_cast<double>(kMaxGridCells)) {
    throw Error(ErrorKind::InvalidArgument, "grid too large");
  }
}

std::size_t GridSpec::half_count() const {
  return static_cast<std::size_t>(std::llround(half_extent / step));
}

double GridSpec::coordinate(std::size_t i) const {
  return (static_cast<double>(i) - static_cast<double>(half_count())) * step;
}

Execution Execution::hardware() {
  return {std::max(1u, std::thread::hardware_concurrency())};
}

double corr_code(double delta_chips) { return std::max(0.0, 1.0 - std::abs(delta_chips)); }

double corr_doppler(double delta_hz, double coherent_time_s) {
  const double x = constants::kPi * delta_hz * coherent_time_s;
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

ChannelGeometry channel_geometry(const SatelliteChannel& channel, const Scenario& scenario) {
  const EnuVector los = ecef_to_enu(channel.position, scenario.receiver_position);
  const double range = los.norm();
  if (!(range > 0.0)) {
    throw Error(ErrorKind::DegenerateGeometry,
                "PRN " + std::to_string(channel.prn) + " coincides with the receiver");
  }
  return {los.e, los.n, los.u, range};
}

double delta_tau0(const EnuVector& candidate_en, const ChannelGeometry& geometry,
                  const SignalConfig& signal) {
  if (!(geometry.range > 0.0)) {
    throw Error(ErrorKind::DegenerateGeometry, "zero slant range");
  }
  const double scale = signal.code_rate_hz / (constants::kSpeedOfLight * geometry.range);
  return scale * (geometry.east * -candidate_en.e + geometry.north * -candidate_en.n);
}

double delta_tau0(const EnuVector& candidate_en, const SatelliteChannel& channel,
                  const Scenario& scenario) {
  return delta_tau0(candidate_en, channel_geometry(channel, scenario), scenario.signal);
}

double delta_fd0(const EnuVector& candidate_vel_en, const ChannelGeometry& geometry,
                 const SignalConfig& signal) {
  if (!(geometry.range > 0.0)) {
    throw Error(ErrorKind::DegenerateGeometry, "zero slant range");
  }
  const double scale = signal.carrier_hz / (constants::kSpeedOfLight * geometry.range);
  return scale * (geometry.east * -candidate_vel_en.e + geometry.north * -candidate_vel_en.n);
}

double delta_fd0(const EnuVector& candidate_vel_en, const SatelliteChannel& channel,
                 const Scenario& scenario) {
  return delta_fd0(candidate_vel_en, channel_geometry(channel, scenario), scenario.signal);
}

double channel_correlation(const EnuVector& offset_en, Space space, const SatelliteChannel& channel,
                           const ChannelGeometry& geometry, const SignalConfig& signal) {
  double sum = 0.0;
  if (space == Space::Position) {
    const double dev = delta_tau0(offset_en, geometry, signal);
    for (const SignalPath& p : channel.paths) {
      sum += p.amplitude * corr_code(dev + kMultipathSide * p.delay_chips);
    }
  } else {
    const double dev = delta_fd0(offset_en, geometry, signal);
    for (const SignalPath& p : channel.paths) {
      sum += p.amplitude * corr_doppler(dev + kMultipathSide * p.doppler_hz, signal.coherent_time_s);
    }
  }
  return sum;
}

Grid2D channel_caf(const GridSpec& spec, const SatelliteChannel& channel, const Scenario& scenario,
                   Execution exec) {
  spec.validate();
  scenario.signal.validate();
  const ChannelGeometry geometry = channel_geometry(channel, scenario);
  Grid2D grid(spec);
  const std::size_t n = spec.samples_per_axis();
  const double sigma = scenario.noise_sigma;
  const std::uint64_t stream = noise_stream(spec.space, channel.prn);

  detail::parallel_chunks(n, exec.threads, [&](std::size_t row_begin, std::size_t row_end) {
    for (std::size_t row = row_begin; row < row_end; ++row) {
      const double north = spec.coordinate(row);
      for (std::size_t col = 0; col < n; ++col) {
        const EnuVector offset{spec.coordinate(col), north, 0.0};
        double v = channel_correlation(offset, spec.space, channel, geometry, scenario.signal);
        if (sigma > 0.0) {
          v += sigma * rng::normal(scenario.seed, stream, row * n + col);
        }
        grid.at(row, col) = v;
      }
    }
  });
  return grid;
}

std::vector<Grid2D> scenario_caf(const GridSpec& spec, const Scenario& scenario, Execution exec) {
  scenario.validate();
  std::vector<Grid2D> grids;
  grids.reserve(scenario.satellites.size());
  for (const auto& sat : scenario.satellites) {
    grids.push_back(channel_caf(spec, sat, scenario, exec));
  }
  return grids;
}

Grid2D superpose(std::span<const Grid2D> grids) {
  if (grids.empty()) {
    throw Error(ErrorKind::InvalidArgument, "no grids to superpose");
  }
  Grid2D total(grids.front().spec);
  for (const Grid2D& g : grids) {
    if (!(g.spec == total.spec)) {
      throw Error(ErrorKind::InvalidArgument, "grids do not share one specification");
    }
    for (std::size_t i = 0; i < total.values.size(); ++i) total.values[i] += g.values[i];
  }
  return total;
}

GridEstimate argmax(const Grid2D& grid) {
  const std::size_t n = grid.spec.samples_per_axis();
  GridEstimate best;
  double best_norm = 0.0;
  bool first = true;
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t col = 0; col < n; ++col) {
      const double v = grid.at(row, col);
      const double e = grid.spec.coordinate(col), nn = grid.spec.coordinate(row);
      const double norm = std::hypot(e, nn);
      // Row-major scan: an exact tie on value and norm keeps the earlier (row, col).
      if (first || v > best.peak || (v == best.peak && norm < best_norm)) {
        best = {{e, nn, 0.0}, v, row, col};
        best_norm = norm;
        first = false;
      }
    }
  }
  return best;
}

GridEstimate superpose_and_argmax(std::span<const Grid2D> grids) { return argmax(superpose(grids)); }

}  // namespace dpemp
