#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dpemp/caf.hpp"
#include "dpemp/scmb.hpp"
#include "dpemp/table.hpp"

namespace dpemp {

enum class ExperimentKind { ElevationSweep, AzimuthMc, CaseStudy, OracleCompare };
std::string_view to_string(ExperimentKind kind);

/// One comparison against an expected value: passes when |actual - expected| <= tolerance.
struct Check {
  std::string name;
  double expected = 0.0;
  double actual = 0.0;
  double tolerance = 0.0;

  bool pass() const;
};

struct ExperimentReport {
  ExperimentKind kind = ExperimentKind::ElevationSweep;
  ResultTable records;
  std::vector<std::pair<std::string, double>> summary;
  std::vector<Check> checks;

  double summary_value(std::string_view key) const;
  bool passed() const;
};

bool identical(const ExperimentReport& a, const ExperimentReport& b);

/// Inclusive sweep start, start + step, ... <= stop.
struct SweepRange {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  void validate() const;
  std::vector<double> values() const;
};

/// Range and range-rate bias of one (delay, Doppler) pair across elevations [deg].
ExperimentReport run_elevation_sweep(double delay_chips, double doppler_hz,
                                     const SweepRange& elevation_deg, const SignalConfig& signal);

enum class AzimuthSampling {
  Uniform,  // separation ~ U(0, pi), one counter-based draw per trial
  Sweep,    // separation = pi (k + 1) / (trials + 1), deterministic
};

struct AzimuthMcConfig {
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  AzimuthSampling sampling = AzimuthSampling::Uniform;
  Space space = Space::Position;
  double window_half_extent = 100.0;  // only flags records, nothing is discarded
  Execution exec;
};

/// Pair error for random (or swept) azimuth separations. Satellite i sits at azimuth 0.
ExperimentReport run_random_azimuth_mc(double bias_i, double bias_j, const AzimuthMcConfig& config);

struct CaseStudyConfig {
  GridSpec grid = GridSpec::position_default();
  Execution exec;
};

/// Analytic intersections of the scenario's center lines against grid readouts. Each
/// in-window intersection is read off a noiseless grid built from its contributing paths.
ExperimentReport run_case_study(const Scenario& scenario, const CaseStudyConfig& config);

/// Full-scenario grid argmax against the analytic intersection with the highest
/// composite correlation.
ExperimentReport run_oracle_compare(const Scenario& scenario, const CaseStudyConfig& config);

/// Noiseless composite correlation of all channels at a continuous (E, N) offset.
double scenario_correlation(const EnuVector& offset_en, Space space, const Scenario& scenario);

}  // namespace dpemp
