#include "dpemp/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "dpemp/constants.hpp"
#include "dpemp/error.hpp"

namespace dpemp {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;
using Category = ScenarioError::Category;

[[noreturn]] void schema_error(const std::string& field, const std::string& what) {
  throw ScenarioError(Category::Schema, field, what);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) schema_error(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(path + "." + key, "missing field");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) schema_error(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) schema_error(path, "must be finite");
  return d;
}

double number_or(const json& obj, const std::string& key, double fallback, const std::string& path) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : number(*it, path + "." + key);
}

EcefVector vec3(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 3) schema_error(path, "expected an array of 3 numbers");
  return {number(v[0], path + "[0]"), number(v[1], path + "[1]"), number(v[2], path + "[2]")};
}

GridSpec parse_grid(const json& g, const std::string& path) {
  GridSpec spec;
  const json& space = require(g, "space", path);
  if (!space.is_string()) schema_error(path + ".space", "expected a string");
  try {
    spec.space = space_from_string(space.get<std::string>());
  } catch (const Error& e) {
    schema_error(path + ".space", e.what());
  }
  spec.half_extent = number(require(g, "half_extent", path), path + ".half_extent");
  spec.step = number(require(g, "step", path), path + ".step");
  try {
    spec.validate();
  } catch (const Error& e) {
    schema_error(path, e.what());
  }
  return spec;
}

SignalPath parse_path(const json& p, const std::string& path) {
  SignalPath out;
  const json& kind = require(p, "kind", path);
  if (kind == "los") {
    out.kind = PathKind::Los;
  } else if (kind == "nlos") {
    out.kind = PathKind::Nlos;
  } else {
    schema_error(path + ".kind", "expected \"los\" or \"nlos\"");
  }
  out.amplitude = number_or(p, "amplitude", 1.0, path);
  out.delay_chips = number_or(p, "delay_chips", 0.0, path);
  out.doppler_hz = number_or(p, "doppler_hz", 0.0, path);
  if (out.amplitude < 0.0) schema_error(path + ".amplitude", "must be non-negative");
  if (out.kind == PathKind::Los && (out.delay_chips != 0.0 || out.doppler_hz != 0.0)) {
    schema_error(path, "a LOS path carries no delay or Doppler bias");
  }
  return out;
}

double angle_gap_deg(double a, double b) {
  double d = std::fmod(std::abs(a - b), 360.0);
  return d > 180.0 ? 360.0 - d : d;
}

SatelliteChannel parse_satellite(const json& s, const std::string& path, const EcefVector& receiver,
                                 const LoadOptions& options) {
  SatelliteChannel ch;
  const json& prn = require(s, "prn", path);
  if (!prn.is_number_integer()) schema_error(path + ".prn", "expected an integer");
  ch.prn = prn.get<int>();

  const bool has_angles = s.contains("angles");
  const bool has_position = s.contains("position_ecef_m");
  if (!has_angles && !has_position) {
    schema_error(path, "needs either angles or position_ecef_m");
  }

  std::vector<SignalPath> paths;
  const json& jp = require(s, "paths", path);
  if (!jp.is_array() || jp.empty()) schema_error(path + ".paths", "expected a non-empty array");
  int los = 0;
  for (std::size_t i = 0; i < jp.size(); ++i) {
    const std::string pp = path + ".paths[" + std::to_string(i) + "]";
    paths.push_back(parse_path(jp[i], pp));
    if (paths.back().kind == PathKind::Los) {
      ++los;
      if (i != 0) schema_error(pp, "the LOS path must come first");
    }
  }
  if (los > 1) schema_error(path + ".paths", "at most one LOS path per satellite");

  std::optional<LookAngles> given;
  if (has_angles) {
    const json& a = s["angles"];
    const double el = number(require(a, "elevation_deg", path + ".angles"), path + ".angles.elevation_deg");
    const double az = number(require(a, "azimuth_deg", path + ".angles"), path + ".angles.azimuth_deg");
    given = LookAngles::from_degrees(el, az);
  }

  try {
    if (has_position) {
      ch.position = vec3(s["position_ecef_m"], path + ".position_ecef_m");
      if (s.contains("velocity_ecef_mps")) {
        ch.velocity = vec3(s["velocity_ecef_mps"], path + ".velocity_ecef_mps");
      }
      ch.angles = look_angles(ecef_to_enu(ch.position, receiver));
      ch.paths = std::move(paths);
    } else {
      ch = make_channel(ch.prn, *given, receiver, std::move(paths), options.nominal_range);
    }
  } catch (const Error& e) {
    throw ScenarioError(Category::Geometry, path, e.what());
  }

  if (has_angles && has_position) {
    const double del = std::abs(given->elevation_deg() - ch.angles.elevation_deg());
    const double daz = angle_gap_deg(given->azimuth_deg(), ch.angles.azimuth_deg());
    if (del > options.angle_tolerance_deg || daz > options.angle_tolerance_deg) {
      std::ostringstream msg;
      msg << "given angles (" << given->elevation_deg() << ", " << given->azimuth_deg()
          << ") deg disagree with the position-derived (" << ch.angles.elevation_deg() << ", "
          << ch.angles.azimuth_deg() << ") deg";
      throw ScenarioError(Category::Geometry, path + ".angles", msg.str());
    }
  }
  return ch;
}

}  // namespace

ScenarioFile parse_scenario(const std::string& text, const LoadOptions& options) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(Category::Parse, "", e.what());
  }
  if (!root.is_object()) schema_error("$", "expected a JSON object");

  ScenarioFile file;
  const json& version = require(root, "schema_version", "$");
  if (!version.is_number_integer() || version.get<int>() != kScenarioSchemaVersion) {
    schema_error("$.schema_version", "unsupported schema version");
  }
  file.schema_version = version.get<int>();

  Scenario& sc = file.scenario;
  const json& receiver = require(root, "receiver", "$");
  sc.receiver_position = vec3(require(receiver, "position_ecef_m", "$.receiver"), "$.receiver.position_ecef_m");
  if (receiver.contains("velocity_ecef_mps")) {
    sc.receiver_velocity = vec3(receiver["velocity_ecef_mps"], "$.receiver.velocity_ecef_mps");
  }
  const double origin_norm = sc.receiver_position.norm();
  if (origin_norm < constants::kMinOriginNorm || origin_norm > constants::kMaxOriginNorm) {
    schema_error("$.receiver.position_ecef_m", "not an Earth-surface position");
  }

  if (root.contains("signal")) {
    const json& sig = root["signal"];
    if (!sig.is_object()) schema_error("$.signal", "expected an object");
    sc.signal.code_rate_hz = number_or(sig, "code_rate_hz", sc.signal.code_rate_hz, "$.signal");
    sc.signal.carrier_hz = number_or(sig, "carrier_hz", sc.signal.carrier_hz, "$.signal");
    sc.signal.sample_rate_hz = number_or(sig, "sample_rate_hz", sc.signal.sample_rate_hz, "$.signal");
    sc.signal.coherent_time_s = number_or(sig, "coherent_time_s", sc.signal.coherent_time_s, "$.signal");
    try {
      sc.signal.validate();
    } catch (const Error& e) {
      schema_error("$.signal", e.what());
    }
  }

  if (root.contains("grid")) {
    const json& g = root["grid"];
    if (g.is_array()) {
      for (std::size_t i = 0; i < g.size(); ++i) {
        file.grids.push_back(parse_grid(g[i], "$.grid[" + std::to_string(i) + "]"));
      }
    } else {
      file.grids.push_back(parse_grid(g, "$.grid"));
    }
  }

  const json& sats = require(root, "satellites", "$");
  if (!sats.is_array() || sats.empty()) schema_error("$.satellites", "expected a non-empty array");
  for (std::size_t i = 0; i < sats.size(); ++i) {
    sc.satellites.push_back(
        parse_satellite(sats[i], "$.satellites[" + std::to_string(i) + "]", sc.receiver_position, options));
  }

  sc.noise_sigma = number_or(root, "noise_sigma", 0.0, "$");
  if (sc.noise_sigma < 0.0) schema_error("$.noise_sigma", "must be non-negative");
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned() && !(root["seed"].is_number_integer() && root["seed"].get<long long>() >= 0)) {
      schema_error("$.seed", "expected a non-negative integer");
    }
    sc.seed = root["seed"].get<std::uint64_t>();
  }

  try {
    sc.validate();
  } catch (const Error& e) {
    schema_error("$", e.what());
  }
  return file;
}

ScenarioFile load_scenario_file(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(Category::Parse, "", "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), options);
}

Scenario load_scenario(const std::filesystem::path& path, const LoadOptions& options) {
  return load_scenario_file(path, options).scenario;
}

std::string write_scenario(const ScenarioFile& file, SatelliteStyle style) {
  const Scenario& sc = file.scenario;
  auto arr = [](const EcefVector& v) { return ojson::array({v.x, v.y, v.z}); };
  ojson root;
  root["schema_version"] = file.schema_version;
  root["receiver"] = {{"position_ecef_m", arr(sc.receiver_position)},
                      {"velocity_ecef_mps", arr(sc.receiver_velocity)}};
  root["signal"] = {{"code_rate_hz", sc.signal.code_rate_hz},
                    {"carrier_hz", sc.signal.carrier_hz},
                    {"sample_rate_hz", sc.signal.sample_rate_hz},
                    {"coherent_time_s", sc.signal.coherent_time_s}};
  if (!file.grids.empty()) {
    root["grid"] = ojson::array();
    for (const GridSpec& g : file.grids) {
      root["grid"].push_back({{"space", std::string(to_string(g.space))},
                              {"half_extent", g.half_extent},
                              {"step", g.step}});
    }
  }
  root["satellites"] = ojson::array();
  for (const SatelliteChannel& sat : sc.satellites) {
    ojson js;
    js["prn"] = sat.prn;
    if (style == SatelliteStyle::Angles) {
      // nano-degree rounding keeps hand-entered angles readable after the trig round trip
      const auto tidy = [](double deg) { return std::round(deg * 1e9) / 1e9; };
      js["angles"] = {{"elevation_deg", tidy(sat.angles.elevation_deg())},
                      {"azimuth_deg", tidy(sat.angles.azimuth_deg())}};
    } else {
      js["position_ecef_m"] = arr(sat.position);
      js["velocity_ecef_mps"] = arr(sat.velocity);
    }
    js["paths"] = ojson::array();
    for (const SignalPath& p : sat.paths) {
      js["paths"].push_back({{"kind", p.kind == PathKind::Los ? "los" : "nlos"},
                             {"amplitude", p.amplitude},
                             {"delay_chips", p.delay_chips},
                             {"doppler_hz", p.doppler_hz}});
    }
    root["satellites"].push_back(std::move(js));
  }
  root["noise_sigma"] = sc.noise_sigma;
  root["seed"] = sc.seed;
  return root.dump(2) + "\n";
}

std::string write_scenario(const Scenario& scenario, SatelliteStyle style) {
  ScenarioFile file;
  file.scenario = scenario;
  return write_scenario(file, style);
}

GridSpec grid_for(const ScenarioFile& file, Space space) {
  for (const GridSpec& g : file.grids) {
    if (g.space == space) return g;
  }
  return space == Space::Position ? GridSpec::position_default() : GridSpec::velocity_default();
}

}  // namespace dpemp
