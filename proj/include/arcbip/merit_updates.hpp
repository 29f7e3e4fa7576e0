#pragma once

#include "arcbip/nlp_model.hpp"

namespace arcbip {
struct SolverConfig;
}

namespace arcbip::merit {

// Values entering the predicted/actual reduction at one iterate.
struct ReductionReport {
  double npred = 0.0;
  double tpred = 0.0;
  double pred = 0.0;
  double ared = 0.0;
  double chi = 0.0;
  double rho = 0.0;
};

// phi = f - mu sum ln y + nu c_norm. Throws DomainError if some y_i <= 0.
double eval_merit(double f, const Vec& y, double c_norm, double mu, double nu);

// Step data for the model reduction: d = (d_x; d_y) at (A, g, y).
struct ModelData {
  Vec grad_f;
  Mat b;
  Mat a;
  Vec g;
  Vec y;
  double mu = 0.0;
  double sigma = 1.0;
};

// Predicted reduction m(0) - m(d) of the merit model.
double eval_pred(const ModelData& data, double nu, const Vec& d_x, const Vec& d_y);

// -grad f^T n_x - 1/2 n_x^T B n_x + mu (e^T Y^{-1} n_y - 1/2 n_y^T Y^{-2} n_y)
double eval_chi(const ModelData& data, const Vec& n_x, const Vec& n_y);

// |(v_x; Y^{-1} v_y)|
double scaled_norm(const Vec& y, const Vec& v_x, const Vec& v_y);

// phi(x, y) - phi(x + d_x, y + d_y), with f and g at the trial point supplied
// by the caller. Throws DomainError if y + d_y has a nonpositive entry.
double eval_ared(double f, const Vec& g, const Vec& y, double f_trial, const Vec& g_trial,
                 const Vec& d_y, double mu, double nu);

// ared / pred, or -infinity when pred <= 1e-16 max(1, |ared|).
double descent_ratio(double ared, double pred);

struct PenaltyInputs {
  double nu_prev = 1.0;
  double npred = 0.0;
  double tpred = 0.0;
  double chi = 0.0;
  double sigma = 1.0;
  double sigma_tilde = 1.0;
  double dn_norm = 0.0;  // |D n|
  double dt_norm = 0.0;  // |D t|
  double dd_norm = 0.0;  // |D d|
  double delta = 0.3;
};

// Smallest penalty making pred >= delta nu npred; equals nu_prev when both
// denominators vanish.
double penalty_threshold(const PenaltyInputs& in);

// nu_prev if threshold <= nu_prev, else max(threshold, 1.5 nu_prev).
double update_penalty(const PenaltyInputs& in);

double update_sigma(double sigma_prev, double rho, const SolverConfig& config);

struct MultiplierEstimate {
  Vec raw;     // least-squares solution before the positivity fix
  Vec lambda;  // strictly positive
};

// Least-squares multipliers of grad f + A lambda = 0, Y lambda = mu e:
// (A^T A + Y^2) lambda = mu y - A^T grad f, then every nonpositive entry is
// replaced by min(1e-3, mu / y_i).
MultiplierEstimate update_multipliers(const Mat& a, const Vec& y, const Vec& grad_f, double mu);

// mu = max(theta y^T lambda / m, mu_floor), theta from the centrality ratio
// min_i y_i lambda_i / (y^T lambda / m).
double update_barrier(const Vec& y, const Vec& lambda, double mu_floor);

// max{|grad f + A lambda|, |Y lambda - mu e|, |g + y|}
double error_function(const Vec& grad_f, const Mat& a, const Vec& lambda, const Vec& y,
                      const Vec& g, double mu);

}  // namespace arcbip::merit
