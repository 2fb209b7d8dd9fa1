#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ccqo/bench.hpp"
#include "ccqo/classic_bb.hpp"
#include "ccqo/ibbplus.hpp"
#include "ccqo/instance_gen.hpp"
#include "ccqo/sfs.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace ccqo;

PYBIND11_MODULE(_ccqo, m) {
  m.doc() = "Cardinality-constrained convex quadratic optimization: flag-box "
            "branch-and-bound, SFS feasibility heuristic, classical feature-selection "
            "branch-and-bound, synthetic best-subset-selection instances and metrics.";

  py::register_exception<Error>(m, "CcqoError", PyExc_RuntimeError);

  py::class_<QuadraticObjective>(m, "QuadraticObjective",
                                 "f(x) = 0.5 x'Qx + q'x + c with Q symmetric PSD")
      .def(py::init<Matrix, Vector, double>(), "Q"_a, "q"_a, "c"_a)
      .def_property_readonly("dim", &QuadraticObjective::dim)
      .def_property_readonly("Q", &QuadraticObjective::Q)
      .def_property_readonly("q", &QuadraticObjective::q)
      .def_property_readonly("c", &QuadraticObjective::c)
      .def("value", &QuadraticObjective::value, "x"_a)
      .def("gradient", &QuadraticObjective::gradient, "x"_a);

  py::class_<SearchBox>(m, "SearchBox", "Per-coordinate bounds straddling 0")
      .def(py::init<Vector, Vector>(), "lower"_a, "upper"_a)
      .def_static("cube", &SearchBox::cube, "p"_a, "half_width"_a)
      .def_readonly("lower", &SearchBox::lower)
      .def_readonly("upper", &SearchBox::upper)
      .def("contains", &SearchBox::contains, "x"_a, "tol"_a = 1e-12);

  py::class_<QpSolution>(m, "QpSolution")
      .def_readonly("point", &QpSolution::point)
      .def_readonly("value", &QpSolution::value)
      .def_readonly("kkt_residual", &QpSolution::kkt_residual)
      .def_readonly("iterations", &QpSolution::iterations);

  m.def("minimize_box_qp",
        [](const QuadraticObjective& obj, const SearchBox& box, double tol) {
          return minimize_box_qp(obj, box, tol);
        },
        "obj"_a, "box"_a, "tol"_a = 1e-9);
  m.def("restrict_objective", &restrict_objective, "obj"_a, "support"_a);
  m.def("lower_bound", &lower_bound, "obj"_a, "box"_a, "support"_a, "tol"_a = 1e-9,
        "Tight lower bound over the region with off-support coordinates fixed to 0");
  m.def("kkt_residual", &kkt_residual, "obj"_a, "box"_a, "x"_a);

  py::class_<FlagBox>(m, "FlagBox", "Integer-flag box: 0 fixed-zero, 1 undecided, 2 nonzero")
      .def(py::init<int>(), "p"_a)
      .def_property_readonly("dim", &FlagBox::dim)
      .def("flag", &FlagBox::flag, "i"_a)
      .def("branch", &FlagBox::branch, "eta"_a)
      .def("support", &FlagBox::support)
      .def("count_two", &FlagBox::count_two)
      .def("count_zero", &FlagBox::count_zero)
      .def("__str__", &FlagBox::to_string)
      .def("__repr__", [](const FlagBox& fb) { return "FlagBox('" + fb.to_string() + "')"; });

  py::enum_<VerdictKind>(m, "VerdictKind")
      .value("Infeasible", VerdictKind::Infeasible)
      .value("TerminalFixedSupport", VerdictKind::TerminalFixedSupport)
      .value("TerminalFreeSupport", VerdictKind::TerminalFreeSupport)
      .value("Continue", VerdictKind::Continue);

  py::class_<DeletionVerdict>(m, "DeletionVerdict")
      .def_readonly("kind", &DeletionVerdict::kind)
      .def_readonly("support", &DeletionVerdict::support);

  m.def("check_deletion", &check_deletion, "fb"_a, "k"_a);

  py::enum_<Selection>(m, "Selection")
      .value("BestFirst", Selection::BestFirst)
      .value("DepthFirst", Selection::DepthFirst);

  py::enum_<StopReason>(m, "StopReason")
      .value("Exhausted", StopReason::Exhausted)
      .value("HardTime", StopReason::HardTime)
      .value("HardIter", StopReason::HardIter)
      .value("SoftNoImproveIters", StopReason::SoftNoImproveIters)
      .value("SoftNoImproveTime", StopReason::SoftNoImproveTime);

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("selection", &SolverConfig::selection)
      .def_readwrite("max_iterations", &SolverConfig::max_iterations)
      .def_readwrite("hard_time_limit", &SolverConfig::hard_time_limit)
      .def_readwrite("soft_no_improve_iters", &SolverConfig::soft_no_improve_iters)
      .def_readwrite("soft_no_improve_time", &SolverConfig::soft_no_improve_time)
      .def_readwrite("qp_tol", &SolverConfig::qp_tol)
      .def_readwrite("disable_bound_deletion", &SolverConfig::disable_bound_deletion)
      .def_readwrite("sfs_every", &SolverConfig::sfs_every)
      .def_readwrite("in_level_ordering", &SolverConfig::in_level_ordering)
      .def_readwrite("collect_audit", &SolverConfig::collect_audit);

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("point", &SolveResult::point)
      .def_readonly("value", &SolveResult::value)
      .def_readonly("iterations", &SolveResult::iterations)
      .def_readonly("lb_calls", &SolveResult::lb_calls)
      .def_readonly("nodes_created", &SolveResult::nodes_created)
      .def_readonly("elapsed", &SolveResult::elapsed)
      .def_readonly("stop_reason", &SolveResult::stop_reason)
      .def_readonly("incumbent_history", &SolveResult::incumbent_history)
      .def_readonly("deleted_boxes", &SolveResult::deleted_boxes);

  m.def("solve_ibb", &solve_ibb, "obj"_a, "box"_a, "k"_a, "cfg"_a = SolverConfig{},
        py::call_guard<py::gil_scoped_release>(),
        "Flag-box branch-and-bound; Exhausted means the value is the global optimum");
  m.def("solve_bb", &solve_bb, "obj"_a, "box"_a, "k"_a, "cfg"_a = SolverConfig{},
        py::call_guard<py::gil_scoped_release>(),
        "Classical feature-selection branch-and-bound baseline");

  py::class_<SfsResult>(m, "SfsResult")
      .def_readonly("support", &SfsResult::support)
      .def_readonly("point", &SfsResult::point)
      .def_readonly("value", &SfsResult::value)
      .def_readonly("iterations", &SfsResult::iterations)
      .def_readonly("switches", &SfsResult::switches)
      .def_readonly("qp_calls", &SfsResult::qp_calls)
      .def_readonly("value_history", &SfsResult::value_history);

  m.def("gain", &gain, "obj"_a, "box"_a, "support"_a, "s"_a, "tol"_a = 1e-9);
  m.def("reduction", &reduction, "obj"_a, "box"_a, "support"_a, "s"_a, "tol"_a = 1e-9);
  m.def("default_initial_support", &default_initial_support, "obj"_a, "box"_a, "k"_a,
        "tol"_a = 1e-9);
  m.def("run_sfs",
        [](const QuadraticObjective& obj, const SearchBox& box, int k,
           std::optional<IndexSet> initial, double tol) {
          const IndexSet init =
              initial ? *initial : default_initial_support(obj, box, k, tol);
          return run_sfs(obj, box, k, init, tol);
        },
        "obj"_a, "box"_a, "k"_a, "initial_support"_a = py::none(), "tol"_a = 1e-9,
        py::call_guard<py::gil_scoped_release>(),
        "Sequential feature swapping from the given (or default) initial support");

  py::enum_<DesignCase>(m, "DesignCase")
      .value("Overdetermined", DesignCase::Overdetermined)
      .value("Underdetermined", DesignCase::Underdetermined);

  py::class_<ShapeSpec>(m, "ShapeSpec")
      .def_readonly("name", &ShapeSpec::name)
      .def_readonly("p", &ShapeSpec::p)
      .def_readonly("n_od", &ShapeSpec::n_od)
      .def_readonly("n_ud", &ShapeSpec::n_ud);

  m.def("shape_table", &shape_table);
  m.def("find_shape", &find_shape, "name"_a);

  py::class_<GenParams>(m, "GenParams")
      .def(py::init<>())
      .def_readwrite("example_id", &GenParams::example_id)
      .def_readwrite("snr", &GenParams::snr)
      .def_readwrite("seed", &GenParams::seed)
      .def_readwrite("k0", &GenParams::k0)
      .def_readwrite("k", &GenParams::k)
      .def_readwrite("rho", &GenParams::rho)
      .def_readwrite("tau", &GenParams::tau);

  py::class_<RegressionInstance>(m, "RegressionInstance")
      .def_readonly("label", &RegressionInstance::label)
      .def_readonly("n", &RegressionInstance::n)
      .def_readonly("p", &RegressionInstance::p)
      .def_readonly("k", &RegressionInstance::k)
      .def_readonly("k0", &RegressionInstance::k0)
      .def_readonly("snr", &RegressionInstance::snr)
      .def_readonly("sigma2", &RegressionInstance::sigma2)
      .def_readonly("seed", &RegressionInstance::seed)
      .def_readonly("X", &RegressionInstance::X)
      .def_readonly("y", &RegressionInstance::y)
      .def_readonly("beta0", &RegressionInstance::beta0)
      .def_readonly("box_lower", &RegressionInstance::box_lower)
      .def_readonly("box_upper", &RegressionInstance::box_upper)
      .def("box", &RegressionInstance::box);

  m.def("generate", &generate, "shape"_a, "design"_a, "params"_a);
  m.def("generate_custom", &generate_custom, "p"_a, "n"_a, "params"_a,
        "label_prefix"_a = "custom");
  m.def("build_ccqo", &build_ccqo, "X"_a, "y"_a,
        "Q = 2 X'X, q = -2 X'y, c = y'y, so f(beta) = ||y - X beta||^2");
  m.def("initial_box", &initial_box, "beta_hat"_a, "tau"_a = 1.0);
  m.def("ols_fit",
        [](const Matrix& X, const Vector& y, std::optional<SearchBox> box, double tol) {
          return ols_fit(X, y, box ? &*box : nullptr, tol);
        },
        "X"_a, "y"_a, "box"_a = py::none(), "tol"_a = 1e-9);
  m.def("save_instance", &save_instance, "inst"_a, "path"_a);
  m.def("load_instance", &load_instance, "path"_a);

  py::class_<bench::OracleResult>(m, "OracleResult")
      .def_readonly("support", &bench::OracleResult::support)
      .def_readonly("point", &bench::OracleResult::point)
      .def_readonly("value", &bench::OracleResult::value)
      .def_readonly("lb_calls", &bench::OracleResult::lb_calls);

  m.def("brute_force_oracle", &bench::brute_force_oracle, "obj"_a, "box"_a, "k"_a,
        "tol"_a = 1e-9, py::call_guard<py::gil_scoped_release>(),
        "Exhaustive size-k support enumeration (guarded to 1e6 subsets)");
  m.def("relative_gap_percent", &bench::relative_gap_percent, "f_tilde"_a, "f_star"_a);
  m.def("expected_lb_calls", &bench::expected_lb_calls, "p"_a, "k"_a);

  py::class_<bench::BoxplotSummary>(m, "BoxplotSummary")
      .def_readonly("q25", &bench::BoxplotSummary::q25)
      .def_readonly("median", &bench::BoxplotSummary::median)
      .def_readonly("q75", &bench::BoxplotSummary::q75)
      .def_readonly("lower_extreme", &bench::BoxplotSummary::lower_extreme)
      .def_readonly("upper_extreme", &bench::BoxplotSummary::upper_extreme)
      .def_readonly("outliers", &bench::BoxplotSummary::outliers);

  m.def("boxplot_stats", &bench::boxplot_stats, "sample"_a);

  py::class_<bench::Measurement>(m, "Measurement")
      .def(py::init([](std::string instance, std::string solver, double t) {
             return bench::Measurement{std::move(instance), std::move(solver), t};
           }),
           "instance"_a, "solver"_a, "t"_a)
      .def_readonly("instance", &bench::Measurement::instance)
      .def_readonly("solver", &bench::Measurement::solver)
      .def_readonly("t", &bench::Measurement::t);

  py::class_<bench::ProfilePoint>(m, "ProfilePoint")
      .def_readonly("ratio", &bench::ProfilePoint::ratio)
      .def_readonly("fraction", &bench::ProfilePoint::fraction);

  m.def("performance_profile", &bench::performance_profile, "measurements"_a);

  py::class_<bench::RecurrenceReport>(m, "RecurrenceReport")
      .def_readonly("violations", &bench::RecurrenceReport::violations)
      .def_readonly("ok", &bench::RecurrenceReport::ok);

  m.def("tree_size_recurrence_check", &bench::tree_size_recurrence_check, "p_max"_a);

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif
}
