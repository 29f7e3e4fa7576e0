#include "arcbip/driver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "arcbip/errors.hpp"
#include "arcbip/merit_updates.hpp"
#include "arcbip/normal_step.hpp"
#include "arcbip/tangential_step.hpp"

namespace arcbip {
namespace {

constexpr double kStagnationSigma = 1e20;
constexpr int kStagnationRejections = 50;
constexpr double kBfgsCurvature = 1e-8;

double cube(double v) { return v * v * v; }

// Powell-damped BFGS on s = x+ - x and the change in the Lagrangian gradient.
void damped_bfgs(Mat& b, const Vec& s, const Vec& grad_change) {
  const Vec bs = b * s;
  const double sbs = s.dot(bs);
  if (!(sbs > kBfgsCurvature * s.squaredNorm()) || s.squaredNorm() == 0.0) return;
  const double sy = s.dot(grad_change);
  double theta = 1.0;
  if (sy < 0.2 * sbs) theta = 0.8 * sbs / (sbs - sy);
  const Vec r = theta * grad_change + (1.0 - theta) * bs;
  const double sr = s.dot(r);
  if (!(sr > kBfgsCurvature * s.squaredNorm())) return;
  b += -bs * bs.transpose() / sbs + r * r.transpose() / sr;
  b = 0.5 * (b + b.transpose());
}

bool use_exact_hessian(const NlpProblem& problem, const SolverConfig& config) {
  return problem.has_hessian() && !config.force_bfgs;
}

}  // namespace

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged:
      return "Converged";
    case SolveStatus::MaxIterations:
      return "MaxIterations";
    case SolveStatus::SubproblemFailure:
      return "SubproblemFailure";
    case SolveStatus::EvaluationError:
      return "EvaluationError";
  }
  return "Unknown";
}

double state_error(const IterateState& s, double mu) {
  return merit::error_function(s.grad_f, s.a, s.lambda, s.y, s.g, mu);
}

IterateState initialize(const NlpProblem& problem, const Vec& x0, const SolverConfig& config,
                        EvalCounters& counters) {
  problem.validate();
  config.validate();
  if (x0.size() != problem.n) throw DimensionMismatch("initial point has the wrong dimension");

  IterateState s;
  s.x = x0;
  const FirstOrderData data = evaluate_all(problem, x0, counters);
  s.f = data.f;
  s.g = data.g;
  s.grad_f = data.grad_f;
  s.a = data.A;
  s.y = (-s.g).cwiseMax(config.y_floor);
  s.mu = config.mu0;
  s.nu = config.nu1;
  s.sigma = config.sigma0;
  s.lambda = merit::update_multipliers(s.a, s.y, s.grad_f, s.mu).lambda;
  s.b = use_exact_hessian(problem, config) ? eval_hessian(problem, s.x, s.lambda, counters)
                                           : Mat::Identity(problem.n, problem.n);
  return s;
}

IterationRecord inner_iteration(IterateState& s, const NlpProblem& problem,
                                const SolverConfig& config, EvalCounters& counters) {
  IterationRecord rec;
  rec.mu = s.mu;
  rec.sigma_before = s.sigma;
  rec.nu_before = s.nu;
  rec.nu_after = s.nu;
  const double sigma_tilde = s.sigma / cube(config.xi);

  auto reject = [&](double rho) {
    rec.rho = rho;
    rec.accepted = false;
    s.sigma = merit::update_sigma(s.sigma, rho, config);
    rec.sigma_after = s.sigma;
    rec.min_slack = s.y.minCoeff();
    rec.e_mu = state_error(s, s.mu);
    rec.e_0 = state_error(s, 0.0);
    ++s.consecutive_rejections;
    return rec;
  };

  normal::NormalStepResult nstep;
  tangential::TangentialStepResult tstep;
  try {
    nstep = normal::solve_normal(s.a, s.y, s.g, s.sigma,
                                 {config.xi, config.tau, config.b, config.gamma_n});
    tangential::TangentialData tdata{tangential::tangential_basis(s.a, s.y),
                                     s.b,
                                     s.mu,
                                     s.y,
                                     s.grad_f,
                                     nstep.n_x,
                                     nstep.n_y,
                                     s.sigma};
    tstep = tangential::solve_tangential(tdata, {config.tau, config.b, config.gamma_t});
  } catch (const MaxSecularIterations&) {
    rec.subproblem_failed = true;
    return reject(-std::numeric_limits<double>::infinity());
  }

  const Vec d_x = nstep.n_x + tstep.t_x;
  const Vec d_y = nstep.n_y + tstep.t_y;
  rec.npred = nstep.npred;
  rec.tpred = tstep.tpred;
  rec.normal_fallback = nstep.used_cauchy_fallback;
  rec.tangential_fallback = tstep.used_cauchy_fallback;
  rec.n_norm = merit::scaled_norm(s.y, nstep.n_x, nstep.n_y);
  rec.t_norm = merit::scaled_norm(s.y, tstep.t_x, tstep.t_y);
  rec.d_norm = merit::scaled_norm(s.y, d_x, d_y);
  rec.min_ny_ratio = nstep.n_y.cwiseQuotient(s.y).minCoeff();
  rec.min_dy_ratio = d_y.cwiseQuotient(s.y).minCoeff();
  rec.null_residual = (s.a.transpose() * tstep.t_x + tstep.t_y).norm();

  const merit::ModelData model{s.grad_f, s.b, s.a, s.g, s.y, s.mu, s.sigma};
  rec.chi = merit::eval_chi(model, nstep.n_x, nstep.n_y);

  merit::PenaltyInputs pin;
  pin.nu_prev = s.nu;
  pin.npred = nstep.npred;
  pin.tpred = tstep.tpred;
  pin.chi = rec.chi;
  pin.sigma = s.sigma;
  pin.sigma_tilde = sigma_tilde;
  pin.dn_norm = rec.n_norm;
  pin.dt_norm = rec.t_norm;
  pin.dd_norm = rec.d_norm;
  pin.delta = config.delta;
  s.nu = merit::update_penalty(pin);
  rec.nu_after = s.nu;

  rec.pred = merit::eval_pred(model, s.nu, d_x, d_y);
  rec.pred_decomposed = rec.tpred + s.nu * rec.npred + rec.chi +
                        (s.sigma * cube(rec.t_norm) + s.nu * sigma_tilde * cube(rec.n_norm) -
                         s.sigma * cube(rec.d_norm)) /
                            3.0;
  rec.merit_before = merit::eval_merit(s.f, s.y, (s.g + s.y).norm(), s.mu, s.nu);

  const Vec x_trial = s.x + d_x;
  const Vec y_trial = s.y + d_y;
  double f_trial = 0.0;
  Vec g_trial;
  try {
    f_trial = eval_objective(problem, x_trial, counters);
    g_trial = eval_constraints(problem, x_trial, counters);
  } catch (const NonFiniteEvaluation&) {
    rec.trial_evaluation_failed = true;
    return reject(-std::numeric_limits<double>::infinity());
  }
  rec.ared = merit::eval_ared(s.f, s.g, s.y, f_trial, g_trial, d_y, s.mu, s.nu);
  rec.merit_after = rec.merit_before - rec.ared;
  const double rho = merit::descent_ratio(rec.ared, rec.pred);

  if (!(rho >= config.eta1)) return reject(rho);

  Vec grad_trial;
  Mat a_trial;
  try {
    grad_trial = eval_gradient(problem, x_trial, counters);
    a_trial = eval_jacobian(problem, x_trial, counters);
  } catch (const NonFiniteEvaluation&) {
    rec.trial_evaluation_failed = true;
    return reject(-std::numeric_limits<double>::infinity());
  }

  const Vec x_prev = s.x;
  const Vec grad_prev = s.grad_f;
  const Mat a_prev = s.a;
  s.x = x_trial;
  s.y = y_trial;
  s.f = f_trial;
  s.g = g_trial;
  s.grad_f = grad_trial;
  s.a = a_trial;
  s.lambda = merit::update_multipliers(s.a, s.y, s.grad_f, s.mu).lambda;
  if (use_exact_hessian(problem, config)) {
    s.b = eval_hessian(problem, s.x, s.lambda, counters);
  } else {
    damped_bfgs(s.b, s.x - x_prev,
                (s.grad_f + s.a * s.lambda) - (grad_prev + a_prev * s.lambda));
  }

  rec.rho = rho;
  rec.accepted = true;
  s.sigma = merit::update_sigma(s.sigma, rho, config);
  rec.sigma_after = s.sigma;
  rec.min_slack = s.y.minCoeff();
  rec.e_mu = state_error(s, s.mu);
  rec.e_0 = state_error(s, 0.0);
  s.consecutive_rejections = 0;
  return rec;
}

SolveResult solve(const NlpProblem& problem, const Vec& x0, const SolverConfig& config) {
  SolveResult result;
  IterateState s;
  try {
    s = initialize(problem, x0, config, result.counters);
  } catch (const NonFiniteEvaluation& e) {
    result.status = SolveStatus::EvaluationError;
    result.message = e.what();
    result.objective_evals = result.counters.nf;
    result.gradient_evals = result.counters.ngrad;
    return result;
  }
  result.merit_evals = 1;
  result.mu_history.push_back(s.mu);

  auto finish = [&](SolveStatus status, std::string message) {
    result.status = status;
    result.message = std::move(message);
    result.x_final = s.x;
    result.y_final = s.y;
    result.lambda_final = s.lambda;
    result.f_final = s.f;
    result.e_final = state_error(s, 0.0);
    result.mu_final = s.mu;
    result.nu_final = s.nu;
    result.objective_evals = result.counters.nf;
    result.gradient_evals = result.counters.ngrad;
    return result;
  };

  const double mu_floor = config.mu_floor();
  // When the barrier update fails to decrease mu (always the case at the
  // floor), the unchanged inner test would pass again without progress, so
  // the inner loop keeps iterating until the outer test is met.
  bool mu_stalled = s.mu <= mu_floor;
  while (state_error(s, 0.0) >= config.e_t) {
    int inner = 0;
    while (state_error(s, s.mu) >= config.a * s.mu ||
           (mu_stalled && state_error(s, 0.0) >= config.e_t)) {
      if (result.inner_iterations >= config.max_total_iters) {
        return finish(SolveStatus::MaxIterations, "total iteration limit reached");
      }
      if (inner >= config.max_inner_per_mu) {
        return finish(SolveStatus::MaxIterations, "inner iteration limit reached");
      }
      IterationRecord rec;
      try {
        rec = inner_iteration(s, problem, config, result.counters);
      } catch (const Error& e) {
        return finish(SolveStatus::EvaluationError, e.what());
      }
      rec.k = result.inner_iterations;
      if (!rec.trial_evaluation_failed && !rec.subproblem_failed) ++result.merit_evals;
      result.log.push_back(rec);
      ++result.inner_iterations;
      ++inner;
      if (s.sigma > kStagnationSigma && s.consecutive_rejections >= kStagnationRejections) {
        return finish(SolveStatus::SubproblemFailure, "stagnation: regularisation diverged");
      }
    }
    const double mu_prev = s.mu;
    s.mu = merit::update_barrier(s.y, s.lambda, mu_floor);
    mu_stalled = s.mu >= mu_prev;
    result.mu_history.push_back(s.mu);
    ++result.outer_iterations;
    if (result.outer_iterations >= config.max_outer_iters &&
        state_error(s, 0.0) >= config.e_t) {
      return finish(SolveStatus::MaxIterations, "outer iteration limit reached");
    }
  }
  return finish(SolveStatus::Converged, "E(x, y; 0) below tolerance");
}

}  // namespace arcbip
