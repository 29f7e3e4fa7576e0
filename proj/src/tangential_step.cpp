#include "arcbip/tangential_step.hpp"

#include <cmath>
#include <limits>

#include "arcbip/cubic_core.hpp"
#include "arcbip/dense_linalg.hpp"
#include "arcbip/errors.hpp"

namespace arcbip::tangential {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check(const TangentialData& d) {
  const Eigen::Index n = d.n();
  const Eigen::Index m = d.m();
  if (d.basis.rows() != n + m || d.basis.cols() != n || d.b.rows() != n || d.b.cols() != n ||
      d.n_x.size() != n || d.n_y.size() != m) {
    throw DimensionMismatch("tangential step: inconsistent dimensions");
  }
  if (!(d.y.array() > 0.0).all()) throw DomainError("tangential step: slacks must be positive");
}

double cube(double v) { return v * v * v; }

// Y^{-1}(n_y + t_y) >= -tau e, evaluated in the form the caller checks.
bool within_bound(const TangentialData& d, const Vec& t_y, double tau) {
  return ((d.n_y + t_y).cwiseQuotient(d.y).array() >= -tau).all();
}

}  // namespace

Mat tangential_basis(const Mat& a, const Vec& y) {
  if (a.cols() != y.size()) throw DimensionMismatch("tangential_basis: A and y disagree");
  if (!(y.array() > 0.0).all()) throw DomainError("tangential_basis: slacks must be positive");
  Mat m(a.rows() + a.cols(), a.cols());
  m.topRows(a.rows()) = a;
  m.bottomRows(a.cols()) = y.asDiagonal();
  Mat basis = linalg::null_space_basis(m);
  basis.bottomRows(a.cols()) = y.asDiagonal() * basis.bottomRows(a.cols());
  return basis;
}

Vec tangential_gradient(const TangentialData& d) {
  check(d);
  const Vec y_inv = d.y.cwiseInverse();
  const Vec barrier = y_inv - y_inv.cwiseProduct(y_inv).cwiseProduct(d.n_y);
  return -d.basis_x().transpose() * (d.grad_f + d.b * d.n_x) +
         d.mu * d.basis_y().transpose() * barrier;
}

Mat reduced_hessian(const TangentialData& d) {
  const Mat scaled_y = d.y.cwiseInverse().asDiagonal() * d.basis_y();
  Mat h = d.basis_x().transpose() * d.b * d.basis_x() + d.mu * scaled_y.transpose() * scaled_y;
  return 0.5 * (h + h.transpose());
}

double eval_tpred(const TangentialData& d, const Vec& t_x, const Vec& t_y) {
  const Vec y_inv = d.y.cwiseInverse();
  const Vec ty_scaled = t_y.cwiseProduct(y_inv);
  const double scaled_norm = std::sqrt(t_x.squaredNorm() + ty_scaled.squaredNorm());
  return -(d.grad_f + d.b * d.n_x).dot(t_x) - 0.5 * t_x.dot(d.b * t_x) +
         d.mu * (y_inv.dot(t_y) - d.n_y.cwiseProduct(y_inv).dot(ty_scaled) -
                 0.5 * ty_scaled.squaredNorm()) -
         d.sigma / 3.0 * cube(scaled_norm);
}

TangentialCauchy tangential_cauchy_point(const TangentialData& d, double tau) {
  check(d);
  TangentialCauchy out;
  out.p_c = tangential_gradient(d);
  const double pc_sq = out.p_c.squaredNorm();
  if (pc_sq == 0.0) return out;

  const Vec dir_x = d.basis_x() * out.p_c;
  const Vec dir_y = d.basis_y() * out.p_c;
  double beta_max = kInf;
  for (Eigen::Index i = 0; i < d.m(); ++i) {
    if (dir_y[i] < 0.0) beta_max = std::min(beta_max, (-tau * d.y[i] - d.n_y[i]) / dir_y[i]);
  }
  beta_max = std::max(beta_max, 0.0);

  const double scaled_norm =
      std::sqrt(dir_x.squaredNorm() + dir_y.cwiseQuotient(d.y).squaredNorm());
  double beta = cubic::minimize_cubic_1d(-pc_sq, out.p_c.dot(reduced_hessian(d) * out.p_c),
                                         d.sigma * cube(scaled_norm), beta_max);
  // The step is later formed as N p with p = beta p_c stored first; shave
  // beta until that exact form satisfies the bound.
  Vec p = beta * out.p_c;
  while (beta > 0.0 && !within_bound(d, d.basis_y() * p, tau)) {
    beta = std::nextafter(beta, 0.0);
    p = beta * out.p_c;
  }
  out.beta = beta;
  out.tpred = eval_tpred(d, d.basis_x() * p, d.basis_y() * p);
  if (out.tpred < 0.0) {
    // Rounding only: beta = 0 is feasible with tpred = 0.
    out.beta = 0.0;
    out.tpred = 0.0;
  }
  return out;
}

TangentialStepResult solve_tangential(const TangentialData& d, const TangentialParams& params) {
  check(d);
  if (!(d.sigma > 0.0)) throw ConfigError("solve_tangential: sigma must be positive");
  const Eigen::Index n = d.n();
  const Eigen::Index m = d.m();
  TangentialStepResult out;
  out.t_x = Vec::Zero(n);
  out.t_y = Vec::Zero(m);
  out.p = Vec::Zero(n);

  const TangentialCauchy cp = tangential_cauchy_point(d, params.tau);
  out.tpred_cauchy = cp.tpred;
  if (cp.p_c.squaredNorm() == 0.0) return out;

  const cubic::CubicSolution sol = cubic::solve_cubic({-cp.p_c, reduced_hessian(d), d.sigma});

  // Y^{-1}(n_y + N_y p) >= -tau e, backtracked along p.
  const Vec y_inv = d.y.cwiseInverse();
  const Vec scaled_dir = y_inv.asDiagonal() * (d.basis_y() * sol.s);
  const Vec lower = -params.tau * Vec::Ones(m) - y_inv.cwiseProduct(d.n_y);
  const cubic::BacktrackResult bt = cubic::backtrack_to_bound(scaled_dir, lower, params.b);
  out.backtracks = bt.reductions;
  out.p = bt.reductions <= 64 ? Vec(sol.s * std::pow(params.b, bt.reductions)) : Vec::Zero(n);
  out.t_x = d.basis_x() * out.p;
  out.t_y = d.basis_y() * out.p;
  out.tpred = eval_tpred(d, out.t_x, out.t_y);

  if (!within_bound(d, out.t_y, params.tau) || out.tpred < params.gamma_t * cp.tpred || out.tpred < 0.0) {
    out.p = cp.beta * cp.p_c;
    out.t_x = d.basis_x() * out.p;
    out.t_y = d.basis_y() * out.p;
    out.tpred = cp.tpred;
    out.used_cauchy_fallback = true;
  }
  return out;
}

}  // namespace arcbip::tangential
