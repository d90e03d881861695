#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gmtk/bench.hpp"
#include "gmtk/dd_io.hpp"
#include "gmtk/dual.hpp"
#include "gmtk/json_io.hpp"
#include "gmtk/problem.hpp"
#include "gmtk/solvers.hpp"
#include "gmtk/transforms.hpp"

namespace py = pybind11;
using namespace gmtk;

PYBIND11_MODULE(_gmtk, m) {
  m.doc() = "graph matching toolkit bindings";
  m.attr("DUMMY") = kDummy;

  py::register_exception<Error>(m, "GmtkError");

  py::class_<Assignment>(m, "Assignment")
      .def(py::init<int, int, double>(), py::arg("node"), py::arg("label"),
           py::arg("cost"))
      .def_readonly("node", &Assignment::node)
      .def_readonly("label", &Assignment::label)
      .def_readonly("cost", &Assignment::cost);

  py::class_<Edge>(m, "Edge")
      .def(py::init<int, int, double>(), py::arg("a"), py::arg("b"),
           py::arg("cost"))
      .def_readonly("a", &Edge::a)
      .def_readonly("b", &Edge::b)
      .def_readonly("cost", &Edge::cost);

  py::class_<Problem>(m, "Problem")
      .def(py::init<int, int, std::vector<Assignment>, std::vector<Edge>>(),
           py::arg("num_nodes"), py::arg("num_labels"), py::arg("assignments"),
           py::arg("edges"))
      .def_property_readonly("num_nodes", &Problem::num_nodes)
      .def_property_readonly("num_labels", &Problem::num_labels)
      .def_property_readonly("num_assignments", &Problem::num_assignments)
      .def_property_readonly("num_edges", &Problem::num_edges)
      .def("assignments", &Problem::assignments)
      .def("edges", &Problem::edges)
      .def("is_bijective", &Problem::is_bijective)
      .def("is_non_positive", &Problem::is_non_positive)
      .def("has_zero_unaries", &Problem::has_zero_unaries);

  py::class_<TracePoint>(m, "TracePoint")
      .def_readonly("elapsed", &TracePoint::elapsed)
      .def_readonly("energy", &TracePoint::energy)
      .def_readonly("bound", &TracePoint::bound);

  py::class_<RunRecord>(m, "RunRecord")
      .def_readonly("solver", &RunRecord::solver)
      .def_readonly("instance", &RunRecord::instance)
      .def_readonly("trace", &RunRecord::trace)
      .def_readonly("labeling", &RunRecord::labeling)
      .def_readonly("energy", &RunRecord::energy)
      .def_readonly("bound", &RunRecord::bound)
      .def_readonly("params_used", &RunRecord::params_used);

  py::class_<SolverParams>(m, "SolverParams")
      .def(py::init<>())
      .def_readwrite("time_budget_seconds", &SolverParams::time_budget_seconds)
      .def_readwrite("seed", &SolverParams::seed)
      .def_readwrite("fm_generations", &SolverParams::fm_generations)
      .def_readwrite("dual_cap", &SolverParams::dual_cap)
      .def_readwrite("dual_gap_tol", &SolverParams::dual_gap_tol);

  m.def("parse_dd", py::overload_cast<const std::string&>(&parse_dd));
  m.def("load_dd", &load_dd);
  m.def("write_dd", &write_dd);
  m.def("save_dd", &save_dd);
  m.def("evaluate", &evaluate);
  m.def("is_feasible", &is_feasible);
  m.def("brute_force_solve", &brute_force_solve);
  m.def(
      "solve",
      [](const std::string& solver, const Problem& problem,
         const SolverParams& params) {
        return run_solver(solver, problem, params);
      },
      py::arg("solver"), py::arg("problem"),
      py::arg("params") = SolverParams());
  m.def("solver_names", &solver_names);
  m.def("lower_bound", &lower_bound);
  m.def("record_to_json", &record_to_json, py::arg("record"),
        py::arg("indent") = 2);
  m.def("gm_to_qap", [](const Problem& p) { return gm_to_qap(p).first; });
  m.def("make_non_positive",
        [](const Problem& p) { return make_non_positive(p).first; });
  m.def("remove_unary", [](const Problem& p) { return remove_unary(p).first; });
  m.def("negate_for_max", &negate_for_max);
  m.def("gen_house_style", [](int n, std::uint64_t seed) {
    return gen_house_style(n, seed).problem;
  });
  m.def("gen_caltech_style",
        [](int nV, int nL, int outliers, std::uint64_t seed) {
          return gen_caltech_style(nV, nL, outliers, seed).problem;
        });
}
