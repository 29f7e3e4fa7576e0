#include "arcbip/normal_step.hpp"

#include <cmath>
#include <limits>

#include "arcbip/cubic_core.hpp"
#include "arcbip/dense_linalg.hpp"
#include "arcbip/errors.hpp"

namespace arcbip::normal {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxCauchyReductions = 64;

// Y^{-1} n_y >= -bound e componentwise.
bool within_bound(const Vec& n_y, const Vec& y, double bound) {
  return (n_y.cwiseQuotient(y).array() >= -bound).all();
}

// M = (A; Y), shape (n+m) x m.
Mat scaled_constraint_matrix(const Mat& a, const Vec& y) {
  Mat m(a.rows() + a.cols(), a.cols());
  m.topRows(a.rows()) = a;
  m.bottomRows(a.cols()) = y.asDiagonal();
  return m;
}

void check_inputs(const Mat& a, const Vec& y, const Vec& g) {
  if (a.cols() != y.size() || g.size() != y.size()) {
    throw DimensionMismatch("normal step: inconsistent A, y, g dimensions");
  }
  if (!(y.array() > 0.0).all()) throw DomainError("normal step: slacks must be positive");
}

}  // namespace

double eval_npred(const Mat& a, const Vec& y, const Vec& g, double sigma_tilde, const Vec& n_x,
                  const Vec& n_y) {
  const Vec r = g + y;
  const double scaled_sq = n_x.squaredNorm() + n_y.cwiseQuotient(y).squaredNorm();
  const double scaled = std::sqrt(scaled_sq);
  return r.norm() - (r + a.transpose() * n_x + n_y).norm() -
         sigma_tilde / 3.0 * scaled * scaled * scaled;
}

CauchyPoint normal_cauchy_point(const Mat& a, const Vec& y, const Vec& g, double sigma_tilde,
                                const NormalParams& params) {
  check_inputs(a, y, g);
  const Eigen::Index n = a.rows();
  const Eigen::Index m = a.cols();
  const Vec r = g + y;

  const Vec u_x = -(a * r);
  const Vec u_y = -(y.cwiseProduct(r));
  CauchyPoint cp;
  cp.n_x = u_x;
  cp.n_y = y.cwiseProduct(u_y);
  if (u_x.squaredNorm() + u_y.squaredNorm() == 0.0) {
    cp.n_x = Vec::Zero(n);
    cp.n_y = Vec::Zero(m);
    return cp;
  }

  const double bound = params.xi * params.tau;
  double alpha_max = kInf;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (u_y[i] < 0.0) alpha_max = std::min(alpha_max, -bound / u_y[i]);
  }

  const Vec v = a.transpose() * u_x + y.cwiseProduct(u_y);
  const double u_norm = std::sqrt(u_x.squaredNorm() + u_y.squaredNorm());
  double alpha = cubic::minimize_cubic_1d(r.dot(v), v.squaredNorm(),
                                          sigma_tilde * u_norm * u_norm * u_norm, alpha_max);
  // Guard the bound against rounding, in the form the step is stored.
  while (alpha > 0.0 && !within_bound(alpha * cp.n_y, y, bound)) alpha = std::nextafter(alpha, 0.0);

  double npred = eval_npred(a, y, g, sigma_tilde, alpha * cp.n_x, alpha * cp.n_y);
  for (int j = 0; npred < 0.0 && j < kMaxCauchyReductions; ++j) {
    alpha *= params.b;
    npred = eval_npred(a, y, g, sigma_tilde, alpha * cp.n_x, alpha * cp.n_y);
  }
  if (npred < 0.0) {
    alpha = 0.0;
    npred = 0.0;
  }
  cp.alpha = alpha;
  cp.npred = npred;
  return cp;
}

NormalStepResult solve_normal(const Mat& a, const Vec& y, const Vec& g, double sigma,
                              const NormalParams& params) {
  check_inputs(a, y, g);
  if (!(sigma > 0.0)) throw ConfigError("solve_normal: sigma must be positive");
  const Eigen::Index n = a.rows();
  const Eigen::Index m = a.cols();
  const Vec r = g + y;

  NormalStepResult out;
  out.n_x = Vec::Zero(n);
  out.n_y = Vec::Zero(m);
  if (r.norm() == 0.0) {
    out.omega = Vec::Zero(m);
    return out;
  }

  const double sigma_tilde = sigma / (params.xi * params.xi * params.xi);
  const Mat mm = scaled_constraint_matrix(a, y);
  const cubic::CubicSolution sol =
      cubic::solve_cubic({mm * r, mm * mm.transpose(), sigma_tilde});

  Vec lower = Vec::Constant(n + m, -kInf);
  lower.tail(m).setConstant(-params.xi * params.tau);
  const cubic::BacktrackResult bt = cubic::backtrack_to_bound(sol.s, lower, params.b);
  out.backtracks = bt.reductions;
  out.n_x = bt.step.head(n);
  out.n_y = y.cwiseProduct(bt.step.tail(m));
  // Y u_y can round past the bound that u_y itself satisfies.
  for (double shrink = 1.0; !within_bound(out.n_y, y, params.xi * params.tau);) {
    shrink = std::nextafter(shrink, 0.0);
    out.n_x = shrink * bt.step.head(n);
    out.n_y = shrink * y.cwiseProduct(bt.step.tail(m));
  }
  out.npred = eval_npred(a, y, g, sigma_tilde, out.n_x, out.n_y);

  if (bt.reductions == 0) {
    // The unconstrained solution lies in range(M); u = M omega gives
    // n = (A; Y^2) omega.
    const Vec omega = linalg::least_squares(mm, bt.step);
    Vec n_full(n + m);
    n_full << out.n_x, out.n_y;
    Vec ranged(n + m);
    ranged << a * omega, y.cwiseProduct(y).cwiseProduct(omega);
    if ((n_full - ranged).norm() <= 1e-8 * std::max(1.0, n_full.norm())) out.omega = omega;
  }

  const CauchyPoint cp = normal_cauchy_point(a, y, g, sigma_tilde, params);
  out.npred_cauchy = cp.npred;
  if (out.npred < params.gamma_n * cp.npred || out.npred < 0.0) {
    out.n_x = cp.alpha * cp.n_x;
    out.n_y = cp.alpha * cp.n_y;
    out.npred = cp.npred;
    out.used_cauchy_fallback = true;
    out.omega.reset();
  }
  return out;
}

}  // namespace arcbip::normal
