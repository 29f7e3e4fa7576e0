#include "arcbip/merit_updates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "arcbip/dense_linalg.hpp"
#include "arcbip/errors.hpp"
#include "arcbip/solver_config.hpp"

namespace arcbip::merit {
namespace {

constexpr double kMultiplierZeroTol = 1e-14;

double cube(double v) { return v * v * v; }
}  // namespace

double eval_merit(double f, const Vec& y, double c_norm, double mu, double nu) {
  if (!(y.array() > 0.0).all()) throw DomainError("eval_merit: slack with nonpositive entry");
  return f - mu * y.array().log().sum() + nu * c_norm;
}

double scaled_norm(const Vec& y, const Vec& v_x, const Vec& v_y) {
  return std::sqrt(v_x.squaredNorm() + v_y.cwiseQuotient(y).squaredNorm());
}

double eval_pred(const ModelData& d, double nu, const Vec& d_x, const Vec& d_y) {
  const Vec y_inv = d.y.cwiseInverse();
  const Vec dy_scaled = d_y.cwiseProduct(y_inv);
  const Vec r = d.g + d.y;
  return -d.grad_f.dot(d_x) - 0.5 * d_x.dot(d.b * d_x) -
         d.sigma / 3.0 * cube(scaled_norm(d.y, d_x, d_y)) +
         d.mu * (y_inv.dot(d_y) - 0.5 * dy_scaled.squaredNorm()) +
         nu * (r.norm() - (r + d.a.transpose() * d_x + d_y).norm());
}

double eval_chi(const ModelData& d, const Vec& n_x, const Vec& n_y) {
  const Vec y_inv = d.y.cwiseInverse();
  return -d.grad_f.dot(n_x) - 0.5 * n_x.dot(d.b * n_x) +
         d.mu * (y_inv.dot(n_y) - 0.5 * n_y.cwiseProduct(y_inv).squaredNorm());
}

double eval_ared(double f, const Vec& g, const Vec& y, double f_trial, const Vec& g_trial,
                 const Vec& d_y, double mu, double nu) {
  const Vec y_trial = y + d_y;
  if (!(y_trial.array() > 0.0).all()) {
    throw DomainError("eval_ared: trial slack has a nonpositive entry");
  }
  return eval_merit(f, y, (g + y).norm(), mu, nu) -
         eval_merit(f_trial, y_trial, (g_trial + y_trial).norm(), mu, nu);
}

double descent_ratio(double ared, double pred) {
  if (pred > 1e-16 * std::max(1.0, std::abs(ared))) return ared / pred;
  return -std::numeric_limits<double>::infinity();
}

double penalty_threshold(const PenaltyInputs& in) {
  const double cubic_gap = in.sigma / 3.0 * (cube(in.dt_norm) - cube(in.dd_norm));
  const double normal_cubic = in.sigma_tilde / 3.0 * cube(in.dn_norm);
  const double den1 = (1.0 - in.delta) * in.npred + normal_cubic;
  const double den2 = 0.5 * in.npred + normal_cubic;
  if (den1 <= 0.0 && den2 <= 0.0) return in.nu_prev;
  double threshold = -std::numeric_limits<double>::infinity();
  if (den1 > 0.0) threshold = std::max(threshold, -(in.tpred + cubic_gap + in.chi) / den1);
  if (den2 > 0.0) threshold = std::max(threshold, -cubic_gap / den2);
  return threshold;
}

double update_penalty(const PenaltyInputs& in) {
  const double threshold = penalty_threshold(in);
  if (threshold <= in.nu_prev) return in.nu_prev;
  return std::max(threshold, 1.5 * in.nu_prev);
}

double update_sigma(double sigma_prev, double rho, const SolverConfig& config) {
  if (rho >= config.eta2) return std::max(config.sigma_min, config.sigma_shrink * sigma_prev);
  if (rho >= config.eta1) return sigma_prev;
  return config.gamma1 * sigma_prev;
}

MultiplierEstimate update_multipliers(const Mat& a, const Vec& y, const Vec& grad_f, double mu) {
  if (!(y.array() > 0.0).all()) throw DomainError("update_multipliers: slacks must be positive");
  // Least squares on the stacked system (A; Y) lambda ~ (-grad_f; mu e), whose
  // normal equations are (A^T A + Y^2) lambda = mu y - A^T grad_f.
  const Eigen::Index n = a.rows();
  const Eigen::Index m = a.cols();
  Mat stacked(n + m, m);
  stacked.topRows(n) = a;
  stacked.bottomRows(m) = y.asDiagonal();
  Vec rhs(n + m);
  rhs << -grad_f, Vec::Constant(m, mu);
  MultiplierEstimate out;
  try {
    out.raw = linalg::least_squares(stacked, rhs);
  } catch (const RankDeficient&) {
    throw RankDeficient("update_multipliers: normal equations are singular");
  }
  // Entries at rounding level count as zero, so an exact zero of the normal
  // equations is fixed the same way whether QR lands on +0 or +1e-16.
  const double zero_tol = kMultiplierZeroTol * std::max(1.0, out.raw.lpNorm<Eigen::Infinity>());
  out.lambda = out.raw;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (out.lambda[i] <= zero_tol) out.lambda[i] = std::min(1e-3, mu / y[i]);
  }
  return out;
}

double update_barrier(const Vec& y, const Vec& lambda, double mu_floor) {
  const double m = static_cast<double>(y.size());
  const Vec products = y.cwiseProduct(lambda);
  const double average = products.sum() / m;
  const double centrality = products.minCoeff() / average;
  const double theta = 0.1 * std::min(0.05 * (1.0 - centrality) / centrality, 2.0);
  return std::max(theta * average, mu_floor);
}

double error_function(const Vec& grad_f, const Mat& a, const Vec& lambda, const Vec& y,
                      const Vec& g, double mu) {
  const double dual = (grad_f + a * lambda).norm();
  const double comp = (y.cwiseProduct(lambda) - mu * Vec::Ones(y.size())).norm();
  const double primal = (g + y).norm();
  return std::max({dual, comp, primal});
}

}  // namespace arcbip::merit
