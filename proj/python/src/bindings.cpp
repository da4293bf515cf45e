#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lpuniq/cli.hpp"
#include "lpuniq/errors.hpp"
#include "lpuniq/graph.hpp"
#include "lpuniq/metric.hpp"
#include "lpuniq/schrodinger.hpp"
#include "lpuniq/verifier.hpp"
#include "lpuniq/weighted.hpp"

namespace py = pybind11;
using namespace lpuniq;

namespace {

// Graph and metric travel together on the Python side; vertices are text.
struct PyMetric {
  PseudoMetric metric;

  VertexId vertex(const std::string& text) const {
    return VertexId::parse(text, metric.graph().vertex_shape());
  }
};

PyMetric make_metric(const std::string& family, const std::string& kind, double scale) {
  GraphPtr g = make_family(FamilyDescriptor::parse(family));
  if (kind == "combinatorial") return {PseudoMetric::combinatorial(g)};
  if (kind == "scaled") return {PseudoMetric::scaled(g, scale)};
  if (kind == "edge_length") return {PseudoMetric::edge_length(g, scale)};
  if (kind == "default") return {PseudoMetric::family_default(g)};
  throw ParameterError("unknown metric kind '" + kind + "'");
}

py::tuple run(CommandResult (*cmd)(const ExperimentConfig&), const std::string& config_json) {
  CommandResult r = cmd(ExperimentConfig::from_json(config_json));
  return py::make_tuple(r.exit_code, r.json);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Weighted-graph Schroedinger operators: thresholds, solver, verification";

  // registered base first: translators run newest first
  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<PotentialError>(m, "PotentialError", base.ptr());
  py::register_exception<FormatError>(m, "FormatError", base.ptr());

  py::class_<PyMetric>(m, "Metric")
      .def(py::init(&make_metric), py::arg("family"), py::arg("kind") = "default", py::arg("scale") = 1.0)
      .def("distance",
           [](const PyMetric& pm, const std::string& x, const std::string& y) {
             return pm.metric.distance(pm.vertex(x), pm.vertex(y));
           })
      .def("ball",
           [](const PyMetric& pm, const std::string& x0, double r) {
             std::vector<std::string> out;
             for (const auto& v : ball(pm.metric, pm.vertex(x0), r)) out.push_back(v.to_string());
             return out;
           })
      .def("neighbors",
           [](const PyMetric& pm, const std::string& x) {
             std::vector<std::pair<std::string, double>> out;
             for (const auto& n : pm.metric.graph().neighbors(pm.vertex(x)))
               out.emplace_back(n.vertex.to_string(), n.weight);
             return out;
           })
      .def("base_vertex", [](const PyMetric& pm) { return pm.metric.graph().base_vertex().to_string(); })
      .def("jump_size",
           [](const PyMetric& pm, double radius) {
             return jump_size(pm.metric, ball_region(pm.metric, pm.metric.graph().base_vertex(), radius)).value;
           })
      .def("intrinsic_bound",
           [](const PyMetric& pm, double q, double radius) {
             return intrinsic_bound(pm.metric, q,
                                    ball_region(pm.metric, pm.metric.graph().base_vertex(), radius))
                 .value;
           })
      .def("__repr__", [](const PyMetric& pm) { return "Metric(" + pm.metric.describe() + ")"; });

  m.def("h_constant", &h_constant, py::arg("alpha"), py::arg("s"), py::arg("c0"), py::arg("p"));
  m.def("k_constant", &k_constant, py::arg("alpha"), py::arg("s"), py::arg("C0"), py::arg("c0"), py::arg("p"));
  m.def("beta_threshold", &beta_threshold, py::arg("c0"), py::arg("p"), py::arg("s"));
  m.def("alpha_threshold", &alpha_threshold, py::arg("c0"), py::arg("p"), py::arg("s"), py::arg("C0"));
  m.def(
      "select_parameters",
      [](double c0, double p, double s, double beta) {
        const auto pc = select_parameters(c0, p, s, beta);
        py::dict d;
        d["beta"] = pc.beta;
        d["beta_star"] = pc.beta_star;
        d["alpha"] = pc.alpha;
        d["delta"] = pc.delta;
        d["radius_floor"] = pc.radius_floor;
        return d;
      },
      py::arg("c0"), py::arg("p"), py::arg("s"), py::arg("beta"));

  m.def("characteristic_roots", [](double c0) {
    const auto r = lattice_characteristic_roots(c0);
    return py::make_tuple(r.plus, r.minus);
  });
  m.def("growing_solution", [](double c0, std::int64_t n) {
    return make_symmetric_growing_solution(c0)(VertexId::lattice1(n));
  });
  m.def(
      "solve_interval",
      [](std::int64_t R, double c0, double boundary) {
        GraphPtr g = make_family(FamilyDescriptor::lattice(1));
        std::vector<VertexId> vs;
        for (std::int64_t n = -R; n <= R; ++n) vs.push_back(VertexId::lattice1(n));
        DirichletProblem problem(*g, vs, GraphFunction::constant(boundary), Potential::constant(c0));
        const GraphFunction u = dirichlet_solve(problem);
        std::vector<double> out;
        for (const auto& v : vs) out.push_back(u(v));
        return out;
      },
      "Dirichlet solution on {-R..R} of Z with constant potential, values in order",
      py::arg("R"), py::arg("c0") = 1.0, py::arg("boundary") = 1.0);

  m.def("certify", [](const std::string& cfg) { return run(&cmd_certify, cfg); });
  m.def("verify", [](const std::string& cfg) { return run(&cmd_verify, cfg); });
  m.def("sharpness", [](const std::string& cfg) { return run(&cmd_sharpness, cfg); });
  m.def("decay", [](const std::string& cfg) { return run(&cmd_decay, cfg); });
  m.def("solve", [](const std::string& cfg) { return run(&cmd_solve, cfg); });
}
