#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qepsoar/benchmarks.hpp"
#include "qepsoar/driver.hpp"
#include "qepsoar/error.hpp"
#include "qepsoar/restart.hpp"

namespace py = pybind11;
using namespace qepsoar;

namespace {

bench::ExampleId example_id(const std::string& name) {
  const auto id = bench::parse_example(name);
  if (!id) throw Error(ErrorKind::InvalidInput, "unknown example '" + name + "'");
  return *id;
}

py::dict residual_dict(const DecompositionResidual& r) {
  py::dict d;
  d["first_row"] = r.first_row;
  d["second_row"] = r.second_row;
  d["orthonormality"] = r.orthonormality;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Implicitly restarted GSOAR for quadratic eigenvalue problems";

  static py::exception<Error> error(m, "QepError", PyExc_RuntimeError);

  py::enum_<TransformMode>(m, "TransformMode")
      .value("Direct", TransformMode::Direct)
      .value("ShiftInvert", TransformMode::ShiftInvert);
  py::enum_<Variant>(m, "Variant")
      .value("IGSOAR", Variant::IGSOAR)
      .value("IRGSOAR", Variant::IRGSOAR)
      .value("IGSOAR0", Variant::IGSOAR0)
      .value("IRGSOAR0", Variant::IRGSOAR0);
  py::enum_<RestartScheme>(m, "RestartScheme")
      .value("Staged", RestartScheme::Staged)
      .value("Restored", RestartScheme::Restored);
  py::enum_<SolveStatus>(m, "SolveStatus")
      .value("Converged", SolveStatus::Converged)
      .value("MaxRestarts", SolveStatus::MaxRestarts)
      .value("Breakdown", SolveStatus::Breakdown);

  py::class_<QepProblem>(m, "QepProblem")
      .def(py::init<SparseMatrix, SparseMatrix, SparseMatrix>(), py::arg("M"), py::arg("C"), py::arg("K"))
      .def_property_readonly("n", &QepProblem::n)
      .def_property_readonly("M", &QepProblem::M)
      .def_property_readonly("C", &QepProblem::C)
      .def_property_readonly("K", &QepProblem::K)
      .def("apply", &QepProblem::apply, py::arg("lam"), py::arg("y"));

  m.def("relative_residual", &relative_residual, py::arg("problem"), py::arg("lam"), py::arg("y"));

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("m", &SolverConfig::m)
      .def_readwrite("k_wanted", &SolverConfig::k_wanted)
      .def_readwrite("f", &SolverConfig::f)
      .def_readwrite("l", &SolverConfig::l)
      .def_readwrite("tol", &SolverConfig::tol)
      .def_readwrite("max_restarts", &SolverConfig::max_restarts)
      .def_readwrite("variant", &SolverConfig::variant)
      .def_readwrite("seed", &SolverConfig::seed)
      .def_readwrite("mode", &SolverConfig::mode)
      .def_readwrite("sigma", &SolverConfig::sigma)
      .def_readwrite("check_invariants", &SolverConfig::check_invariants)
      .def_readwrite("scheme", &SolverConfig::scheme);

  py::class_<ApproxEigenpair>(m, "Eigenpair")
      .def_readonly("lam", &ApproxEigenpair::lambda)
      .def_readonly("theta", &ApproxEigenpair::theta)
      .def_readonly("y", &ApproxEigenpair::y)
      .def_readonly("residual", &ApproxEigenpair::residual);

  py::class_<RestartReport>(m, "RestartReport")
      .def_readonly("cycle", &RestartReport::cycle)
      .def_readonly("shifts_used", &RestartReport::shifts_used)
      .def_readonly("candidates", &RestartReport::candidates)
      .def_readonly("stages", &RestartReport::stages)
      .def_readonly("worst_residual", &RestartReport::worst_residual)
      .def_readonly("residuals", &RestartReport::residuals)
      .def_readonly("ritz_residuals", &RestartReport::ritz_residuals)
      .def_readonly("refined_residuals", &RestartReport::refined_residuals)
      .def_readonly("soar_s", &RestartReport::soar_s)
      .def_readonly("restart_s", &RestartReport::restart_s)
      .def_readonly("find_s", &RestartReport::find_s)
      .def_readonly("explicit_restart", &RestartReport::explicit_restart)
      .def_property_readonly("after_restart", [](const RestartReport& r) -> py::object {
        if (!r.after_restart) return py::none();
        return residual_dict(*r.after_restart);
      });

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("pairs", &SolveResult::pairs)
      .def_readonly("history", &SolveResult::history)
      .def_readonly("status", &SolveResult::status)
      .def_readonly("restarts", &SolveResult::restarts)
      .def_readonly("expansion_steps", &SolveResult::expansion_steps)
      .def_readonly("warnings", &SolveResult::warnings)
      .def_property_readonly("soar_s", &SolveResult::soar_s)
      .def_property_readonly("restart_s", &SolveResult::restart_s)
      .def_property_readonly("find_s", &SolveResult::find_s)
      .def_property_readonly("total_s", &SolveResult::total_s);

  m.def("solve", &solve, py::arg("problem"), py::arg("config"), py::call_guard<py::gil_scoped_release>());

  m.def("gen_example_41", &bench::gen_example_41, py::arg("q") = 90, py::arg("xi") = 1.0);
  m.def("gen_example_42", &bench::gen_example_42, py::arg("tau") = 10.0, py::arg("kappa") = 5.0,
        py::arg("n") = 5000);
  m.def("gen_example_43", &bench::gen_example_43, py::arg("n") = 5000);
  m.def(
      "example_config",
      [](const std::string& name, Variant v, std::uint64_t seed) { return bench::example_spec(example_id(name)).config(v, seed); },
      py::arg("name"), py::arg("variant") = Variant::IRGSOAR, py::arg("seed") = 1);
  m.def(
      "example_problem", [](const std::string& name, double xi) { return bench::example_spec(example_id(name)).problem(xi); },
      py::arg("name"), py::arg("xi") = 1.0);

  m.def(
      "apply_shifts",
      [](const Matrix& t0, Complex t_last, const std::vector<Complex>& shifts) {
        const SweptState s = apply_shifts(t0, t_last, shifts);
        return py::make_tuple(s.t, s.b, s.vacc);
      },
      py::arg("t"), py::arg("t_last"), py::arg("shifts"));
  m.def(
      "restore_hessenberg",
      [](const Matrix& t, const RowVector& b) {
        const RestoredState r = restore_hessenberg(SweptState{t, b, Matrix::Identity(t.rows(), t.cols()), 0.0});
        return py::make_tuple(r.t, r.w, r.b_last);
      },
      py::arg("t"), py::arg("b"));

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), e.what());
    }
  });
}
