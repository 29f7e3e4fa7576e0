#include "arcbip/nlp_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "arcbip/errors.hpp"

namespace arcbip {
namespace {

void require_finite_input(const Vec& x, int n) {
  if (x.size() != n) {
    throw DimensionMismatch("x has size " + std::to_string(x.size()) + ", expected " +
                            std::to_string(n));
  }
  if (!x.allFinite()) throw NonFiniteEvaluation("non-finite point passed to evaluation");
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& v, const NlpProblem& p, const char* what) {
  if (!v.allFinite()) {
    throw NonFiniteEvaluation(std::string(what) + " of problem '" + p.name +
                              "' returned a non-finite value");
  }
}

void require_shape(const Mat& a, Eigen::Index rows, Eigen::Index cols, const NlpProblem& p,
                   const char* what) {
  if (a.rows() != rows || a.cols() != cols) {
    throw DimensionMismatch(std::string(what) + " of problem '" + p.name + "' has shape " +
                            std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                            ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
  }
}

}  // namespace

void NlpProblem::validate() const {
  if (n <= 0 || m <= 0) throw ConfigError("problem '" + name + "': n and m must be positive");
  if (!objective || !constraints || !objective_gradient || !constraint_jacobian) {
    throw ConfigError("problem '" + name + "': missing first-order callback");
  }
}

double eval_objective(const NlpProblem& problem, const Vec& x, EvalCounters& counters) {
  require_finite_input(x, problem.n);
  ++counters.nf;
  const double f = problem.objective(x);
  if (!std::isfinite(f)) {
    throw NonFiniteEvaluation("objective of problem '" + problem.name + "' is not finite");
  }
  return f;
}

Vec eval_constraints(const NlpProblem& problem, const Vec& x, EvalCounters& counters) {
  require_finite_input(x, problem.n);
  ++counters.ng;
  Vec g = problem.constraints(x);
  require_shape(g, problem.m, 1, problem, "constraints");
  require_finite(g, problem, "constraints");
  return g;
}

Vec eval_gradient(const NlpProblem& problem, const Vec& x, EvalCounters& counters) {
  require_finite_input(x, problem.n);
  ++counters.ngrad;
  Vec grad = problem.objective_gradient(x);
  require_shape(grad, problem.n, 1, problem, "objective gradient");
  require_finite(grad, problem, "objective gradient");
  return grad;
}

Mat eval_jacobian(const NlpProblem& problem, const Vec& x, EvalCounters& counters) {
  require_finite_input(x, problem.n);
  ++counters.nj;
  Mat a = problem.constraint_jacobian(x);
  require_shape(a, problem.n, problem.m, problem, "constraint Jacobian");
  require_finite(a, problem, "constraint Jacobian");
  return a;
}

Mat eval_hessian(const NlpProblem& problem, const Vec& x, const Vec& lambda,
                 EvalCounters& counters) {
  if (!problem.has_hessian()) {
    throw ConfigError("problem '" + problem.name + "' provides no Lagrangian Hessian");
  }
  require_finite_input(x, problem.n);
  ++counters.nh;
  Mat h = problem.lagrangian_hessian(x, lambda);
  require_shape(h, problem.n, problem.n, problem, "Lagrangian Hessian");
  require_finite(h, problem, "Lagrangian Hessian");
  return h;
}

FirstOrderData evaluate_all(const NlpProblem& problem, const Vec& x, EvalCounters& counters) {
  FirstOrderData d;
  d.f = eval_objective(problem, x, counters);
  d.g = eval_constraints(problem, x, counters);
  d.grad_f = eval_gradient(problem, x, counters);
  d.A = eval_jacobian(problem, x, counters);
  return d;
}

double finite_difference_check(const NlpProblem& problem, const Vec& x, double h) {
  if (!(h > 0.0)) throw ConfigError("finite difference step must be positive");
  EvalCounters scratch;
  const Vec grad = eval_gradient(problem, x, scratch);
  const Mat jac = eval_jacobian(problem, x, scratch);

  double worst = 0.0;
  Vec xp = x;
  Vec xm = x;
  for (int j = 0; j < problem.n; ++j) {
    xp[j] = x[j] + h;
    xm[j] = x[j] - h;
    const double df = (eval_objective(problem, xp, scratch) - eval_objective(problem, xm, scratch)) /
                      (2.0 * h);
    worst = std::max(worst, std::abs(df - grad[j]) / std::max(1.0, std::abs(grad[j])));

    const Vec dg =
        (eval_constraints(problem, xp, scratch) - eval_constraints(problem, xm, scratch)) /
        (2.0 * h);
    for (int i = 0; i < problem.m; ++i) {
      const double exact = jac(j, i);
      worst = std::max(worst, std::abs(dg[i] - exact) / std::max(1.0, std::abs(exact)));
    }
    xp[j] = x[j];
    xm[j] = x[j];
  }
  return worst;
}

}  // namespace arcbip
