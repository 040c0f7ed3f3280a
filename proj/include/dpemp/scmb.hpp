#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "dpemp/caf.hpp"
#include "dpemp/geom.hpp"

namespace dpemp {

// Satellite circular multipath bias (SCMB) geometry. Everything lives in the local
// horizontal plane with the receiver truth at the origin: East is the first axis,
// North the second, and azimuths run clockwise from North.

/// Range bias [m] of a code-delay bias seen at the given elevation.
double project_to_range(double delay_chips, double elevation, double code_rate_hz);
/// Range-rate bias [m/s] of a Doppler bias seen at the given elevation.
double project_to_range_rate(double doppler_hz, double elevation, double carrier_hz);

/// Azimuth separation folded into [0, pi].
double azimuth_separation(double azimuth_i, double azimuth_j);
/// Acute angle between two center lines, in [0, pi/2].
double delta_alpha(double azimuth_i, double azimuth_j);

struct LineSource {
  int prn = 0;
  std::size_t path = 0;
  friend bool operator==(const LineSource&, const LineSource&) = default;
};

/// Correlation-peak center line, stored in normal form
///   sin(azimuth) * east + cos(azimuth) * north = offset.
/// The slope/intercept form y = -tan(azimuth) x + b is derived and undefined for
/// east/west azimuths.
struct CenterLine {
  Space space = Space::Position;
  double azimuth = 0.0;         // [rad]
  double tangent_offset = 0.0;  // projected bias, signed like the path bias [m or m/s]
  double offset = 0.0;          // signed distance of the line from the truth along the normal
  LineSource source;

  static CenterLine tangent(double azimuth, double radius, Space space = Space::Position,
                            LineSource source = {});

  double normal_east() const;
  double normal_north() const;
  std::optional<double> slope() const;
  std::optional<double> intercept() const;
  double distance_to(double east, double north) const;
};

struct BiasCircle {
  double radius = 0.0;
  LineSource source;
};

BiasCircle bias_circle(const CenterLine& line);

CenterLine center_line(const SatelliteChannel& channel, std::size_t path_index, Space space,
                       const Scenario& scenario);
/// Every path of every satellite, in scenario order.
std::vector<CenterLine> center_lines(const Scenario& scenario, Space space);

EnuVector intersect_lines(const CenterLine& a, const CenterLine& b);

/// Estimate bias produced by the crossing of two tangent lines.
struct BiasResult {
  Space space = Space::Position;
  std::vector<LineSource> contributors;  // defining pair first; empty for pair_bias
  double delta_theta = 0.0;              // folded azimuth separation of the defining pair [rad]
  double dx = 0.0;                       // east (or east-velocity) error
  double dy = 0.0;                       // north (or north-velocity) error
  double dr = 0.0;                       // horizontal error magnitude

  EnuVector point() const { return {dx, dy, 0.0}; }
};

/// Position error from range biases of satellites i and j.
BiasResult pair_bias(double range_bias_i, double range_bias_j, double azimuth_i, double azimuth_j);
/// Velocity error from range-rate biases of satellites i and j.
BiasResult pair_bias_velocity(double range_rate_bias_i, double range_rate_bias_j, double azimuth_i,
                              double azimuth_j);

struct CriticalPoint {
  double delta_theta = 0.0;  // separation minimising the pair error [rad]
  double dr_min = 0.0;
  bool attained = true;  // false for equal radii: the minimum is only an infimum at 0
};

CriticalPoint critical_points(double range_bias_i, double range_bias_j);

enum class BoundCase { Case1, Case2, Case3 };
std::string_view to_string(BoundCase c);

struct ErrorBound {
  BoundCase label = BoundCase::Case1;
  double lower = 0.0;
  bool lower_attained = true;
  double upper = std::numeric_limits<double>::infinity();
  double attained_at = std::numeric_limits<double>::quiet_NaN();  // [rad]
};

/// Error bound for one NLOS radius per satellite (zero for LOS satellites).
ErrorBound case_bound(std::span<const double> radii);

struct IntersectionSet {
  std::vector<BiasResult> points;                        // merged, each with dr from the truth
  std::vector<std::pair<LineSource, LineSource>> parallel;  // cross-satellite pairs with no crossing
  std::size_t raw_count = 0;                                // cross-satellite pairs examined
};

IntersectionSet enumerate_intersections(std::span<const CenterLine> lines);

/// 0.5 (sum N)^2 - 0.5 sum N^2 for the given per-satellite path counts.
std::size_t intersection_count(std::span<const std::size_t> paths_per_satellite);

}  // namespace dpemp
