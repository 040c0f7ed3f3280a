#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpemp/caf.hpp"

namespace dpemp {

inline constexpr int kScenarioSchemaVersion = 1;

/// Scenario load failure. `exit_code` follows the CLI contract: 2 parse, 3 schema, 4 geometry.
class ScenarioError : public std::runtime_error {
 public:
  enum class Category { Parse = 2, Schema = 3, Geometry = 4 };

  ScenarioError(Category category, std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what),
        category_(category),
        field_(std::move(field)) {}

  Category category() const noexcept { return category_; }
  int exit_code() const noexcept { return static_cast<int>(category_); }
  const std::string& field() const noexcept { return field_; }

 private:
  Category category_;
  std::string field_;
};

struct ScenarioFile {
  int schema_version = kScenarioSchemaVersion;
  Scenario scenario;
  std::vector<GridSpec> grids;  // optional per-space overrides
};

struct LoadOptions {
  double nominal_range = 2.2e7;         // [m] for satellites given only as angles
  double angle_tolerance_deg = 0.1;     // angles vs position cross-check
};

enum class SatelliteStyle {
  Angles,     // elevation/azimuth in degrees; positions re-synthesized on load
  Positions,  // ECEF position and velocity at full precision; exact round trip
};

ScenarioFile parse_scenario(const std::string& text, const LoadOptions& options = {});
ScenarioFile load_scenario_file(const std::filesystem::path& path, const LoadOptions& options = {});
Scenario load_scenario(const std::filesystem::path& path, const LoadOptions& options = {});

std::string write_scenario(const ScenarioFile& file, SatelliteStyle style = SatelliteStyle::Positions);
std::string write_scenario(const Scenario& scenario, SatelliteStyle style = SatelliteStyle::Positions);

/// Grid for `space` from the file, falling back to the default search grid.
GridSpec grid_for(const ScenarioFile& file, Space space);

}  // namespace dpemp
