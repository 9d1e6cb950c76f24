#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mimo/mimo.hpp"

namespace py = pybind11;
using namespace mimo;

namespace {

ExperimentResult run(const std::string& kind, const std::string& config_json) {
  const ScenarioConfig cfg = parse_config(config_json);
  if (kind == "subspace") return run_subspace(cfg);
  if (kind == "sumrate") return run_sumrate(cfg);
  if (kind == "runtime") return run_runtime(cfg);
  throw ArgumentError("unknown experiment '" + kind + "'");
}

ArrayGeometry geometry(std::size_t m_h, std::size_t m_v, double carrier_hz) {
  return ArrayGeometry::half_wavelength(m_h, m_v, carrier_hz);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Tensor-structured precoding for planar massive MIMO arrays";

  auto base = py::register_exception<Error>(m, "MimoError");
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<ArgumentError>(m, "ArgumentError", base.ptr());
  py::register_exception<GeometryError>(m, "GeometryError", base.ptr());
  py::register_exception<DecompositionError>(m, "DecompositionError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<InfeasibleError>(m, "InfeasibleError", base.ptr());
  py::register_exception<DegenerateError>(m, "DegenerateError", base.ptr());

  m.def("kron", py::overload_cast<const CMatrix&, const CMatrix&>(&kron), py::arg("a"), py::arg("b"));
  m.def("bessel_j0", &bessel_j0, py::arg("x"));
  m.def("temporal_correlation", &temporal_correlation, py::arg("speed"), py::arg("wavelength"),
        py::arg("tti_len"));

  m.def("steering_horizontal",
        [](std::size_t m_h, std::size_t m_v, double carrier, double el, double az) {
          return steering_horizontal(geometry(m_h, m_v, carrier), el, az);
        },
        py::arg("m_h"), py::arg("m_v"), py::arg("carrier_hz"), py::arg("elevation"), py::arg("azimuth"));
  m.def("steering_vertical",
        [](std::size_t m_h, std::size_t m_v, double carrier, double el) {
          return steering_vertical(geometry(m_h, m_v, carrier), el);
        },
        py::arg("m_h"), py::arg("m_v"), py::arg("carrier_hz"), py::arg("elevation"));
  m.def("steering_full",
        [](std::size_t m_h, std::size_t m_v, double carrier, double el, double az) {
          return steering_full(geometry(m_h, m_v, carrier), el, az);
        },
        py::arg("m_h"), py::arg("m_v"), py::arg("carrier_hz"), py::arg("elevation"), py::arg("azimuth"));

  // Precoders return the beamforming vector f.
  m.def("mrt", [](const CVector& h, double p) { return mrt(h, p).f; }, py::arg("h"), py::arg("power"));
  m.def("zf", [](const CVector& h, const CMatrix& h_tilde, double p) { return zf(h, h_tilde, p).f; },
        py::arg("h"), py::arg("h_tilde"), py::arg("power"));
  m.def("tmrt", [](const CVector& h_h, const CVector& h_v, double p) { return tmrt(h_h, h_v, p).f; },
        py::arg("h_h"), py::arg("h_v"), py::arg("power"));
  m.def("tzf",
        [](const CVector& h_h, const CVector& h_v, const CMatrix& t_h, const CMatrix& t_v, double p) {
          return tzf(h_h, h_v, t_h, t_v, p).f;
        },
        py::arg("h_h"), py::arg("h_v"), py::arg("h_tilde_h"), py::arg("h_tilde_v"), py::arg("power"));
  m.def("interference_matrix", &interference_matrix, py::arg("channels"), py::arg("u"));
  m.def("tzf_feasible", &tzf_feasible, py::arg("m_h"), py::arg("m_v"), py::arg("u_count"));

  m.def("chordal_distance_sq", &chordal_distance_sq, py::arg("u"), py::arg("v"));
  m.def("subspace_chordal_distance_sq", &subspace_chordal_distance_sq, py::arg("a"), py::arg("b"));
  m.def("sum_rate",
        py::overload_cast<const std::vector<CVector>&, const std::vector<CVector>&, double>(&sum_rate),
        py::arg("channels"), py::arg("precoders"), py::arg("noise_variance"));

  m.def("default_config", [] { return config_to_json(parse_config("{}"), 2); });
  m.def("normalize_config", [](const std::string& text) { return config_to_json(parse_config(text), 2); },
        py::arg("config_json"));
  m.def("config_fingerprint", [](const std::string& text) { return config_fingerprint(parse_config(text)); },
        py::arg("config_json"));

  m.def("run_experiment",
        [](const std::string& kind, const std::string& config_json, const std::string& format) {
          const ExperimentResult r = [&] {
            py::gil_scoped_release release;
            return run(kind, config_json);
          }();
          return parse_format(format) == OutputFormat::csv ? to_csv(r) : to_json(r);
        },
        py::arg("kind"), py::arg("config_json") = "{}", py::arg("format") = "json");
}
