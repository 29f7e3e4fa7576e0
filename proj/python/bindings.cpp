#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "arcbip/bench.hpp"
#include "arcbip/cubic_core.hpp"
#include "arcbip/dense_linalg.hpp"
#include "arcbip/driver.hpp"
#include "arcbip/errors.hpp"
#include "arcbip/hs_suite.hpp"
#include "arcbip/merit_updates.hpp"
#include "arcbip/nlp_model.hpp"
#include "arcbip/normal_step.hpp"
#include "arcbip/solver_config.hpp"
#include "arcbip/tangential_step.hpp"

namespace py = pybind11;
using namespace arcbip;
using namespace pybind11::literals;

namespace {

// Wraps Python callables. Callbacks returning lists or scalars are converted
// through numpy so plain Python functions work.
NlpProblem make_problem(int n, int m, py::function objective, py::function constraints,
                        py::function gradient, py::function jacobian,
                        std::optional<py::function> hessian, const std::string& name) {
  NlpProblem p;
  p.n = n;
  p.m = m;
  p.name = name;
  auto np = py::module_::import("numpy");
  auto as_vec = [np](const py::object& o) {
    return np.attr("asarray")(o, "dtype"_a = "float64").attr("reshape")(-1).cast<Vec>();
  };
  auto as_mat = [np](const py::object& o, int rows, int cols) {
    return np.attr("asarray")(o, "dtype"_a = "float64").attr("reshape")(rows, cols).cast<Mat>();
  };
  p.objective = [objective](const Vec& x) { return objective(x).cast<double>(); };
  p.constraints = [constraints, as_vec](const Vec& x) { return as_vec(constraints(x)); };
  p.objective_gradient = [gradient, as_vec](const Vec& x) { return as_vec(gradient(x)); };
  p.constraint_jacobian = [jacobian, as_mat, n, m](const Vec& x) {
    return as_mat(jacobian(x), n, m);
  };
  if (hessian) {
    py::function h = *hessian;
    p.lagrangian_hessian = [h, as_mat, n](const Vec& x, const Vec& lambda) {
      return as_mat(h(x, lambda), n, n);
    };
  }
  return p;
}

py::dict published_dict(const suite::PublishedCounts& c) {
  py::dict d;
  d["NO"] = c.no;
  d["NI"] = c.ni;
  d["NIF"] = c.nif;
  d["NIG"] = c.nig;
  d["Res"] = c.res;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Interior-point solver with cubic-regularised composite steps";

  auto base = py::register_exception<Error>(mod, "ArcbipError", PyExc_RuntimeError);
  py::register_exception<NonFiniteEvaluation>(mod, "NonFiniteEvaluation", base);
  py::register_exception<DomainError>(mod, "DomainError", base);
  py::register_exception<RankDeficient>(mod, "RankDeficient", base);
  py::register_exception<NotSymmetric>(mod, "NotSymmetric", base);
  py::register_exception<NotPositiveDefinite>(mod, "NotPositiveDefinite", base);
  py::register_exception<MaxSecularIterations>(mod, "MaxSecularIterations", base);
  py::register_exception<Unbounded>(mod, "Unbounded", base);
  py::register_exception<DimensionMismatch>(mod, "DimensionMismatch", base);
  py::register_exception<ConfigError>(mod, "ConfigError", base);
  py::register_exception<UnknownProblem>(mod, "UnknownProblem", base);
  py::register_exception<MismatchedProblemSets>(mod, "MismatchedProblemSets", base);
  py::register_exception<ParseError>(mod, "ParseError", base);

  // Configuration -----------------------------------------------------------
  py::class_<SolverConfig> cfg(mod, "SolverConfig");
  cfg.def(py::init<>())
      .def("validate", &SolverConfig::validate)
      .def("set", &SolverConfig::set, "key"_a, "value"_a)
      .def("mu_floor", &SolverConfig::mu_floor)
      .def_static("keys", &SolverConfig::keys);
#define ARCBIP_FIELD(f) cfg.def_readwrite(#f, &SolverConfig::f)
  ARCBIP_FIELD(eta1);
  ARCBIP_FIELD(eta2);
  ARCBIP_FIELD(gamma1);
  ARCBIP_FIELD(gamma2);
  ARCBIP_FIELD(xi);
  ARCBIP_FIELD(delta);
  ARCBIP_FIELD(tau);
  ARCBIP_FIELD(b);
  ARCBIP_FIELD(a);
  ARCBIP_FIELD(e_t);
  ARCBIP_FIELD(sigma0);
  ARCBIP_FIELD(mu0);
  ARCBIP_FIELD(nu1);
  ARCBIP_FIELD(gamma_n);
  ARCBIP_FIELD(gamma_t);
  ARCBIP_FIELD(sigma_shrink);
  ARCBIP_FIELD(sigma_min);
  ARCBIP_FIELD(mu_min);
  ARCBIP_FIELD(y_floor);
  ARCBIP_FIELD(max_inner_per_mu);
  ARCBIP_FIELD(max_total_iters);
  ARCBIP_FIELD(max_outer_iters);
  ARCBIP_FIELD(force_bfgs);
#undef ARCBIP_FIELD
  mod.def("parse_config", &parse_config, "text"_a, "base"_a = SolverConfig{});
  mod.def("load_config_file", &load_config_file, "path"_a, "base"_a = SolverConfig{});

  // Problems ----------------------------------------------------------------
  py::class_<NlpProblem>(mod, "Problem")
      .def(py::init(&make_problem), "n"_a, "m"_a, "objective"_a, "constraints"_a,
           "gradient"_a, "jacobian"_a, "hessian"_a = py::none(), "name"_a = "",
           "Jacobian callbacks return shape (n, m): column i is the gradient of g_i.")
      .def_readonly("n", &NlpProblem::n)
      .def_readonly("m", &NlpProblem::m)
      .def_readonly("name", &NlpProblem::name)
      .def_property_readonly("has_hessian", &NlpProblem::has_hessian)
      .def("objective", [](const NlpProblem& p, const Vec& x) { return p.objective(x); })
      .def("constraints", [](const NlpProblem& p, const Vec& x) { return p.constraints(x); })
      .def("gradient", [](const NlpProblem& p, const Vec& x) { return p.objective_gradient(x); })
      .def("jacobian", [](const NlpProblem& p, const Vec& x) { return p.constraint_jacobian(x); });
  mod.def("finite_difference_check", &finite_difference_check, "problem"_a, "x"_a,
          "h"_a = 1e-6);

  py::class_<suite::SuiteEntry>(mod, "SuiteEntry")
      .def_readonly("name", &suite::SuiteEntry::name)
      .def_readonly("problem", &suite::SuiteEntry::problem)
      .def_readonly("x0", &suite::SuiteEntry::x0)
      .def_readonly("known_optimum", &suite::SuiteEntry::known_optimum)
      .def_property_readonly("published",
                             [](const suite::SuiteEntry& e) { return published_dict(e.published); });
  mod.def("get_problem", &suite::get_problem, "name"_a);
  mod.def("list_problems", [] {
    py::list out;
    for (const auto& info : suite::list_problems()) out.append(py::make_tuple(info.name, info.n, info.m));
    return out;
  });

  // Solver ------------------------------------------------------------------
  py::enum_<SolveStatus>(mod, "SolveStatus")
      .value("Converged", SolveStatus::Converged)
      .value("MaxIterations", SolveStatus::MaxIterations)
      .value("SubproblemFailure", SolveStatus::SubproblemFailure)
      .value("EvaluationError", SolveStatus::EvaluationError);

  py::class_<IterationRecord>(mod, "IterationRecord")
      .def_readonly("k", &IterationRecord::k)
      .def_readonly("mu", &IterationRecord::mu)
      .def_readonly("rho", &IterationRecord::rho)
      .def_readonly("accepted", &IterationRecord::accepted)
      .def_readonly("sigma_before", &IterationRecord::sigma_before)
      .def_readonly("sigma_after", &IterationRecord::sigma_after)
      .def_readonly("nu_before", &IterationRecord::nu_before)
      .def_readonly("nu_after", &IterationRecord::nu_after)
      .def_readonly("npred", &IterationRecord::npred)
      .def_readonly("tpred", &IterationRecord::tpred)
      .def_readonly("chi", &IterationRecord::chi)
      .def_readonly("pred", &IterationRecord::pred)
      .def_readonly("ared", &IterationRecord::ared)
      .def_readonly("n_norm", &IterationRecord::n_norm)
      .def_readonly("t_norm", &IterationRecord::t_norm)
      .def_readonly("d_norm", &IterationRecord::d_norm)
      .def_readonly("e_mu", &IterationRecord::e_mu)
      .def_readonly("e_0", &IterationRecord::e_0);

  py::class_<SolveResult>(mod, "SolveResult")
      .def_readonly("status", &SolveResult::status)
      .def_readonly("message", &SolveResult::message)
      .def_readonly("x", &SolveResult::x_final)
      .def_readonly("y", &SolveResult::y_final)
      .def_readonly("lam", &SolveResult::lambda_final)
      .def_readonly("f", &SolveResult::f_final)
      .def_readonly("res", &SolveResult::e_final)
      .def_readonly("mu", &SolveResult::mu_final)
      .def_readonly("nu", &SolveResult::nu_final)
      .def_readonly("NO", &SolveResult::outer_iterations)
      .def_readonly("NI", &SolveResult::inner_iterations)
      .def_readonly("NIF", &SolveResult::objective_evals)
      .def_readonly("NIG", &SolveResult::gradient_evals)
      .def_readonly("merit_evals", &SolveResult::merit_evals)
      .def_readonly("mu_history", &SolveResult::mu_history)
      .def_readonly("log", &SolveResult::log)
      .def_property_readonly("converged",
                             [](const SolveResult& r) { return r.status == SolveStatus::Converged; });
  mod.def("solve", &solve, "problem"_a, "x0"_a, "config"_a = SolverConfig{});

  // Building blocks ---------------------------------------------------------
  py::class_<cubic::CubicSolution>(mod, "CubicSolution")
      .def_readonly("s", &cubic::CubicSolution::s)
      .def_readonly("multiplier", &cubic::CubicSolution::multiplier)
      .def_readonly("model_value", &cubic::CubicSolution::model_value)
      .def_readonly("hard_case", &cubic::CubicSolution::hard_case)
      .def_readonly("iterations", &cubic::CubicSolution::iterations);
  mod.def(
      "solve_cubic",
      [](const Vec& g, const Mat& h, double sigma, double tol) {
        return cubic::solve_cubic({g, h, sigma}, tol);
      },
      "grad"_a, "hess"_a, "sigma"_a, "tol"_a = 1e-10);
  mod.def("minimize_cubic_1d", &cubic::minimize_cubic_1d, "c1"_a, "c2"_a, "c3"_a,
          "alpha_max"_a = std::numeric_limits<double>::infinity());
  mod.def("null_space_basis", &linalg::null_space_basis, "m"_a);
  mod.def("tangential_basis", &tangential::tangential_basis, "a"_a, "y"_a);
  mod.def(
      "update_multipliers",
      [](const Mat& a, const Vec& y, const Vec& grad_f, double mu) {
        const auto est = merit::update_multipliers(a, y, grad_f, mu);
        return py::make_tuple(est.raw, est.lambda);
      },
      "a"_a, "y"_a, "grad_f"_a, "mu"_a, "Returns (raw, lambda).");
  mod.def("update_barrier", &merit::update_barrier, "y"_a, "lam"_a, "mu_floor"_a);
  mod.def("error_function", &merit::error_function, "grad_f"_a, "a"_a, "lam"_a, "y"_a, "g"_a,
          "mu"_a);

  // Benchmarks --------------------------------------------------------------
  py::class_<bench::BenchReportRow>(mod, "BenchReportRow")
      .def(py::init<>())
      .def_readwrite("name", &bench::BenchReportRow::name)
      .def_readwrite("n", &bench::BenchReportRow::n)
      .def_readwrite("m", &bench::BenchReportRow::m)
      .def_readwrite("NO", &bench::BenchReportRow::no)
      .def_readwrite("NI", &bench::BenchReportRow::ni)
      .def_readwrite("NIF", &bench::BenchReportRow::nif)
      .def_readwrite("NIG", &bench::BenchReportRow::nig)
      .def_readwrite("Res", &bench::BenchReportRow::res)
      .def_readwrite("status", &bench::BenchReportRow::status)
      .def_readwrite("wall_ms", &bench::BenchReportRow::wall_ms)
      .def(py::self == py::self);
  mod.def(
      "run_suite",
      [](const std::vector<std::string>& names, const SolverConfig& config, int jobs) {
        std::vector<suite::SuiteEntry> entries;
        if (names.empty()) {
          entries = suite::all_problems();
        } else {
          for (const auto& name : names) entries.push_back(suite::get_problem(name));
        }
        py::gil_scoped_release release;
        return bench::run_problems(entries, config, jobs);
      },
      "names"_a = std::vector<std::string>{}, "config"_a = SolverConfig{}, "jobs"_a = 1,
      "Solves the named suite problems (all when empty); rows sorted by name.");
  mod.def("emit_csv", &bench::emit_csv, "rows"_a);
  mod.def("parse_csv", &bench::parse_csv, "text"_a);
  mod.def(
      "performance_profile",
      [](const std::vector<std::pair<std::string, std::vector<bench::BenchReportRow>>>& variants,
         const std::string& metric) {
        std::vector<bench::Variant> vs;
        for (const auto& [name, rows] : variants) vs.push_back({name, rows});
        py::list out;
        for (const auto& profile : bench::emit_performance_profile(vs, bench::parse_metric(metric))) {
          py::list pts;
          for (const auto& p : profile) pts.append(py::make_tuple(p.tau_ratio, p.fraction_solved));
          out.append(pts);
        }
        return out;
      },
      "variants"_a, "metric"_a = "NI",
      "variants: list of (name, rows). Returns one list of (tau, fraction) per variant.");
}
