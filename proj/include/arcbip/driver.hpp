#pragma once

#include <string>
#include <vector>

#include "arcbip/nlp_model.hpp"
#include "arcbip/solver_config.hpp"

namespace arcbip {

// Full state of the barrier/ARC iteration, with first-order data cached at x.
struct IterateState {
  Vec x;
  Vec y;       // slacks, strictly positive
  Vec lambda;  // strictly positive multiplier estimate
  double mu = 0.0;
  double nu = 0.0;
  double sigma = 0.0;
  Mat b;  // Hessian (approximation) of the Lagrangian in x

  double f = 0.0;
  Vec g;
  Vec grad_f;
  Mat a;

  int consecutive_rejections = 0;
};

struct IterationRecord {
  int k = 0;
  double mu = 0.0;
  double rho = 0.0;
  bool accepted = false;
  bool subproblem_failed = false;  // secular iteration failed; step rejected
  bool trial_evaluation_failed = false;

  double sigma_before = 0.0;
  double sigma_after = 0.0;
  double nu_before = 0.0;
  double nu_after = 0.0;

  double npred = 0.0;
  double tpred = 0.0;
  double chi = 0.0;
  double pred = 0.0;
  double pred_decomposed = 0.0;  // tpred + nu npred + chi + cubic correction
  double ared = 0.0;
  double merit_before = 0.0;
  double merit_after = 0.0;  // at the trial point

  double n_norm = 0.0;  // |D n|
  double t_norm = 0.0;  // |D t|
  double d_norm = 0.0;  // |D d|
  double min_ny_ratio = 0.0;  // min_i n_y_i / y_i, bounded below by -xi tau
  double min_dy_ratio = 0.0;  // min_i d_y_i / y_i, bounded below by -tau
  double min_slack = 0.0;     // min_i y_i after the iteration
  double null_residual = 0.0; // |A^T t_x + t_y|
  bool normal_fallback = false;
  bool tangential_fallback = false;

  double e_mu = 0.0;  // E(x, y; mu) after the iteration
  double e_0 = 0.0;   // E(x, y; 0) after the iteration
};

enum class SolveStatus { Converged, MaxIterations, SubproblemFailure, EvaluationError };

std::string to_string(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::MaxIterations;
  std::string message;
  Vec x_final;
  Vec y_final;
  Vec lambda_final;
  double f_final = 0.0;
  double e_final = 0.0;  // E(x, y; 0)
  double mu_final = 0.0;
  double nu_final = 0.0;
  int outer_iterations = 0;  // NO
  int inner_iterations = 0;  // NI
  long objective_evals = 0;  // NIF
  long gradient_evals = 0;   // NIG
  long merit_evals = 0;      // points at which the merit function was evaluated
  EvalCounters counters;
  std::vector<double> mu_history;
  std::vector<IterationRecord> log;
};

// E(x, y; mu) with the state's current multiplier.
double state_error(const IterateState& state, double mu);

IterateState initialize(const NlpProblem& problem, const Vec& x0, const SolverConfig& config,
                        EvalCounters& counters);

// One ARC iteration at fixed mu: normal step, tangential step, penalty
// update, ratio test, acceptance, sigma update. A rejected step leaves x and y
// untouched.
IterationRecord inner_iteration(IterateState& state, const NlpProblem& problem,
                                const SolverConfig& config, EvalCounters& counters);

SolveResult solve(const NlpProblem& problem, const Vec& x0, const SolverConfig& config = {});

}  // namespace arcbip
