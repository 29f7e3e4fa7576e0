#pragma once

#include <functional>
#include <optional>
#include <string>

#include <Eigen/Dense>

namespace arcbip {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// minimize f(x) subject to g(x) <= 0, x in R^n, g: R^n -> R^m.
//
// The Jacobian callback returns A(x) with shape n x m: column i is the
// gradient of g_i. The optional Hessian callback returns the Hessian of the
// Lagrangian f + lambda^T g with respect to x.
struct NlpProblem {
  int n = 0;
  int m = 0;
  std::string name;

  std::function<double(const Vec&)> objective;
  std::function<Vec(const Vec&)> constraints;
  std::function<Vec(const Vec&)> objective_gradient;
  std::function<Mat(const Vec&)> constraint_jacobian;
  std::function<Mat(const Vec&, const Vec&)> lagrangian_hessian;  // may be empty

  bool has_hessian() const { return static_cast<bool>(lagrangian_hessian); }

  // Throws ConfigError when dimensions or required callbacks are missing.
  void validate() const;
};

// Per-solve callback counters. Each solve owns its own instance.
struct EvalCounters {
  long nf = 0;     // objective
  long ng = 0;     // constraint values
  long ngrad = 0;  // objective gradient
  long nj = 0;     // constraint Jacobian
  long nh = 0;     // Lagrangian Hessian
};

struct FirstOrderData {
  double f = 0.0;
  Vec g;
  Vec grad_f;
  Mat A;
};

// Instrumented single-callback evaluations. Each increments its counter once
// and throws NonFiniteEvaluation on NaN/Inf or DimensionMismatch on a
// wrongly-sized result.
double eval_objective(const NlpProblem& problem, const Vec& x, EvalCounters& counters);
Vec eval_constraints(const NlpProblem& problem, const Vec& x, EvalCounters& counters);
Vec eval_gradient(const NlpProblem& problem, const Vec& x, EvalCounters& counters);
Mat eval_jacobian(const NlpProblem& problem, const Vec& x, EvalCounters& counters);
Mat eval_hessian(const NlpProblem& problem, const Vec& x, const Vec& lambda,
                 EvalCounters& counters);

FirstOrderData evaluate_all(const NlpProblem& problem, const Vec& x, EvalCounters& counters);

// Largest relative discrepancy between the analytic gradient / Jacobian and
// central differences with step h. Each entry is compared as
// |analytic - fd| / max(1, |analytic|).
double finite_difference_check(const NlpProblem& problem, const Vec& x, double h);

}  // namespace arcbip
