#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "dpemp/cli.hpp"
#include "dpemp/error.hpp"
#include "dpemp/mc.hpp"
#include "dpemp/presets.hpp"
#include "dpemp/report.hpp"
#include "dpemp/scenario_io.hpp"
#include "dpemp/scmb.hpp"

namespace py = pybind11;
using namespace dpemp;

namespace {

py::dict bias_dict(const BiasResult& r) {
  py::dict d;
  d["delta_theta"] = r.delta_theta;
  d["dx"] = r.dx;
  d["dy"] = r.dy;
  d["dr"] = r.dr;
  py::list who;
  for (const LineSource& s : r.contributors) who.append(py::make_tuple(s.prn, s.path));
  d["contributors"] = who;
  return d;
}

py::dict table_dict(const ResultTable& t) {
  py::dict d;
  py::list cols, rows;
  for (const Column& c : t.columns()) cols.append(c.name + "[" + c.unit + "]");
  for (const auto& row : t.rows()) {
    py::list r;
    for (const Cell& cell : row) std::visit([&](const auto& v) { r.append(v); }, cell);
    rows.append(r);
  }
  d["name"] = t.name();
  d["columns"] = cols;
  d["rows"] = rows;
  return d;
}

py::dict report_dict(const ExperimentReport& rep) {
  py::dict d = table_dict(rep.records);
  py::dict summary;
  for (const auto& [k, v] : rep.summary) summary[py::str(k)] = v;
  d["summary"] = summary;
  d["passed"] = rep.passed();
  return d;
}

Execution exec_of(unsigned threads) { return threads == 0 ? Execution::hardware() : Execution{threads}; }

}  // namespace

PYBIND11_MODULE(_dpemp, m) {
  m.doc() = "Geometric multipath error model for direct position estimation";

  static py::exception<Error> error(m, "DpempError", PyExc_ValueError);
  static py::exception<ScenarioError> scenario_error(m, "ScenarioError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ScenarioError& e) {
      scenario_error(e.what());
    } catch (const Error& e) {
      error(e.what());
    }
  });

  py::enum_<Space>(m, "Space").value("POSITION", Space::Position).value("VELOCITY", Space::Velocity);

  py::class_<LookAngles>(m, "LookAngles")
      .def_static("from_degrees", &LookAngles::from_degrees)
      .def_readonly("elevation", &LookAngles::elevation)
      .def_readonly("azimuth", &LookAngles::azimuth)
      .def_property_readonly("elevation_deg", &LookAngles::elevation_deg)
      .def_property_readonly("azimuth_deg", &LookAngles::azimuth_deg);

  py::class_<SatelliteChannel>(m, "Satellite")
      .def_readonly("prn", &SatelliteChannel::prn)
      .def_readonly("angles", &SatelliteChannel::angles)
      .def_property_readonly("paths", [](const SatelliteChannel& s) {
        py::list out;
        for (const SignalPath& p : s.paths) {
          out.append(py::dict(py::arg("kind") = p.kind == PathKind::Los ? "los" : "nlos",
                              py::arg("amplitude") = p.amplitude, py::arg("delay_chips") = p.delay_chips,
                              py::arg("doppler_hz") = p.doppler_hz));
        }
        return out;
      });

  py::class_<Scenario>(m, "Scenario")
      .def_static("load", [](const std::filesystem::path& p) { return load_scenario(p); }, py::arg("path"))
      .def_static("preset", [](const std::string& name) { return presets::by_name(name); }, py::arg("name"))
      .def_readonly("satellites", &Scenario::satellites)
      .def_readwrite("noise_sigma", &Scenario::noise_sigma)
      .def_readwrite("seed", &Scenario::seed)
      .def("to_json", [](const Scenario& s) { return write_scenario(s, SatelliteStyle::Angles); });

  m.def("project_to_range", &project_to_range, py::arg("delay_chips"), py::arg("elevation"),
        py::arg("code_rate_hz") = 10.23e6, "Range bias [m] of a code delay bias seen at elevation [rad].");
  m.def("project_to_range_rate", &project_to_range_rate, py::arg("doppler_hz"), py::arg("elevation"),
        py::arg("carrier_hz") = 1176.45e6);
  m.def("azimuth_separation", &azimuth_separation);
  m.def("delta_alpha", &delta_alpha);
  m.def("pair_bias", [](double ri, double rj, double ai, double aj) { return bias_dict(pair_bias(ri, rj, ai, aj)); },
        py::arg("bias_i"), py::arg("bias_j"), py::arg("azimuth_i"), py::arg("azimuth_j"));
  m.def("pair_bias_velocity",
        [](double ri, double rj, double ai, double aj) { return bias_dict(pair_bias_velocity(ri, rj, ai, aj)); },
        py::arg("bias_i"), py::arg("bias_j"), py::arg("azimuth_i"), py::arg("azimuth_j"));
  m.def("critical_points", [](double ri, double rj) {
    const CriticalPoint c = critical_points(ri, rj);
    return py::dict(py::arg("delta_theta") = c.delta_theta, py::arg("dr_min") = c.dr_min,
                    py::arg("attained") = c.attained);
  });
  m.def("case_bound", [](const std::vector<double>& radii) {
    const ErrorBound b = case_bound(radii);
    return py::dict(py::arg("case") = std::string(to_string(b.label)), py::arg("lower") = b.lower,
                    py::arg("lower_attained") = b.lower_attained, py::arg("upper") = b.upper,
                    py::arg("attained_at") = b.attained_at);
  });
  m.def("intersection_count", [](const std::vector<std::size_t>& n) { return intersection_count(n); });

  m.def(
      "intersections",
      [](const Scenario& sc, Space space) {
        const IntersectionSet set = enumerate_intersections(center_lines(sc, space));
        py::list points;
        for (const BiasResult& r : set.points) points.append(bias_dict(r));
        return py::dict(py::arg("points") = points, py::arg("parallel") = set.parallel.size(),
                        py::arg("raw_count") = set.raw_count);
      },
      py::arg("scenario"), py::arg("space") = Space::Position);

  m.def(
      "caf",
      [](const Scenario& sc, Space space, std::optional<double> half_extent, std::optional<double> step,
         unsigned threads) {
        GridSpec spec = space == Space::Position ? GridSpec::position_default() : GridSpec::velocity_default();
        if (half_extent) spec.half_extent = *half_extent;
        if (step) spec.step = *step;
        Grid2D total(spec);
        GridEstimate est;
        {
          py::gil_scoped_release release;
          total = superpose(scenario_caf(spec, sc, exec_of(threads)));
          est = argmax(total);
        }
        const auto n = static_cast<py::ssize_t>(spec.samples_per_axis());
        py::array_t<double> grid({n, n});
        std::copy(total.values.begin(), total.values.end(), grid.mutable_data());
        py::array_t<double> axis(n);
        for (py::ssize_t i = 0; i < n; ++i) axis.mutable_at(i) = spec.coordinate(static_cast<std::size_t>(i));
        return py::dict(py::arg("values") = grid, py::arg("axis") = axis,
                        py::arg("argmax") = py::make_tuple(est.estimate.e, est.estimate.n), py::arg("peak") = est.peak);
      },
      py::arg("scenario"), py::arg("space") = Space::Position, py::arg("half_extent") = py::none(),
      py::arg("step") = py::none(), py::arg("threads") = 0u,
      "Superposed correlation grid. values[row, col] with rows along North and columns along East.");

  m.def(
      "random_azimuth_mc",
      [](double ri, double rj, std::size_t trials, std::uint64_t seed, bool sweep, Space space, unsigned threads) {
        AzimuthMcConfig cfg;
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.sampling = sweep ? AzimuthSampling::Sweep : AzimuthSampling::Uniform;
        cfg.space = space;
        cfg.exec = exec_of(threads);
        return report_dict(run_random_azimuth_mc(ri, rj, cfg));
      },
      py::arg("bias_i"), py::arg("bias_j"), py::arg("trials") = 10000, py::arg("seed") = 1,
      py::arg("sweep") = false, py::arg("space") = Space::Position, py::arg("threads") = 0u);

  m.def(
      "case_study",
      [](const Scenario& sc, Space space, unsigned threads) {
        CaseStudyConfig cfg;
        cfg.grid = space == Space::Position ? GridSpec::position_default() : GridSpec::velocity_default();
        cfg.exec = exec_of(threads);
        return report_dict(run_case_study(sc, cfg));
      },
      py::arg("scenario"), py::arg("space") = Space::Position, py::arg("threads") = 0u);

  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command line tool in-process; returns (exit_code, stdout, stderr).");
}
