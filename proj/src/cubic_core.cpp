#include "arcbip/cubic_core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "arcbip/dense_linalg.hpp"
#include "arcbip/errors.hpp"

namespace arcbip::cubic {
namespace {

constexpr int kMaxSecularIterations = 200;
constexpr double kSecularTolerance = 1e-10;
constexpr int kMaxBacktracks = 64;

// Eigen-coordinates of the model: s = Q c, g~ = Q^T g.
struct SpectralModel {
  Vec lambda;
  Mat q;
  Vec gt;
  double sigma;

  double value(const Vec& c) const {
    const double cn = c.norm();
    return gt.dot(c) + 0.5 * c.dot(lambda.cwiseProduct(c)) + sigma / 3.0 * cn * cn * cn;
  }

  // c(nu) = -(Lambda + nu I)^{-1} g~ restricted to the given index range.
  Vec step(double nu, Eigen::Index first = 0) const {
    Vec c = Vec::Zero(gt.size());
    for (Eigen::Index i = first; i < gt.size(); ++i) c[i] = -gt[i] / (lambda[i] + nu);
    return c;
  }
};

}  // namespace

double cubic_model_value(const CubicSubproblem& sp, const Vec& s) {
  const double sn = s.norm();
  return sp.grad.dot(s) + 0.5 * s.dot(sp.hess * s) + sp.sigma / 3.0 * sn * sn * sn;
}

CubicSolution solve_cubic(const CubicSubproblem& sp, double tol) {
  const Eigen::Index k = sp.grad.size();
  if (!(sp.sigma > 0.0)) throw ConfigError("solve_cubic: sigma must be positive");
  if (!(tol > 0.0)) throw ConfigError("solve_cubic: tol must be positive");
  if (sp.hess.rows() != k || sp.hess.cols() != k) {
    throw DimensionMismatch("solve_cubic: hessian shape does not match gradient");
  }
  CubicSolution out;
  out.s = Vec::Zero(k);
  if (k == 0) return out;

  const linalg::SymmetricEigen eig = linalg::symmetric_eigendecomposition(sp.hess);
  const SpectralModel model{eig.values, eig.vectors, eig.vectors.transpose() * sp.grad, sp.sigma};
  const double sigma = sp.sigma;
  const double gnorm = sp.grad.norm();
  const double lmin = model.lambda[0];
  const double nu_low = std::max(0.0, -lmin);
  const double hscale = std::max(1.0, model.lambda.cwiseAbs().maxCoeff());

  // Leftmost eigenspace: eigenvalues numerically equal to lambda_min.
  Eigen::Index cluster = 1;
  while (cluster < k && model.lambda[cluster] <= lmin + 1e-12 * hscale) ++cluster;
  const double g_left = model.gt.head(cluster).norm();

  auto finish = [&](const Vec& c, double multiplier, bool hard) {
    out.s = model.q * c;
    out.multiplier = multiplier;
    out.model_value = model.value(c);
    out.hard_case = hard;
    return out;
  };

  if (gnorm == 0.0 && lmin >= 0.0) return finish(Vec::Zero(k), 0.0, false);

  if (nu_low > 0.0 && g_left <= 1e-12 * std::max(1.0, gnorm)) {
    // Candidate hard case: the secular function stays finite at nu_low.
    const Vec c_low = model.step(nu_low, cluster);
    const double target = nu_low / sigma;
    const double c_low_norm = c_low.norm();
    if (c_low_norm <= target) {
      Vec c = c_low;
      c[0] += std::sqrt(std::max(0.0, target * target - c_low_norm * c_low_norm));
      return finish(c, sigma * c.norm(), true);
    }
  }

  // Root of psi(nu) = 1/|s(nu)| - sigma/nu on (nu_low, inf). psi is concave
  // and increasing, so Newton from the right of the root is monotone; the
  // bracket guards the first step and near-pole evaluations.
  // Upper bracket: |s(nu)| <= |g| / (nu - nu_low), so nu_low + sqrt(sigma |g|)
  // already has |s| <= nu / sigma.
  double lo = nu_low;
  double hi = nu_low + std::sqrt(sigma * gnorm) + 1e-300;
  double nu = hi;
  Vec c = model.step(nu);
  for (int it = 1; it <= kMaxSecularIterations; ++it) {
    out.iterations = it;
    const double cn = c.norm();
    const double gap = sigma * cn - nu;
    if (std::abs(gap) <= kSecularTolerance * std::max(1.0, nu) &&
        std::abs(gap) * cn <= 0.01 * tol * std::max(1.0, gnorm)) {
      return finish(c, sigma * cn, false);
    }
    if (gap > 0.0) {
      lo = nu;
    } else {
      hi = nu;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, hi)) {
      // Bracket collapsed at machine precision; accept if the model KKT holds.
      const Vec kkt = model.lambda.cwiseProduct(c) + sigma * cn * c + model.gt;
      if (kkt.norm() <= tol * std::max(1.0, gnorm)) return finish(c, sigma * cn, false);
      break;
    }

    double dsum = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) {
      const double den = model.lambda[i] + nu;
      dsum += model.gt[i] * model.gt[i] / (den * den * den);
    }
    const double psi = 1.0 / cn - sigma / nu;
    const double dpsi = dsum / (cn * cn * cn) + sigma / (nu * nu);
    double next = nu - psi / dpsi;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    nu = next;
    c = model.step(nu);
  }
  throw MaxSecularIterations("solve_cubic: secular iteration did not converge");
}

double minimize_cubic_1d(double c1, double c2, double c3, double alpha_max) {
  if (!(c3 >= 0.0) || !(alpha_max >= 0.0) || !std::isfinite(c1) || !std::isfinite(c2) ||
      !std::isfinite(c3)) {
    throw ConfigError("minimize_cubic_1d: requires finite c1, c2, c3 >= 0 and alpha_max >= 0");
  }
  const bool bounded = std::isfinite(alpha_max);
  if (!bounded && c3 == 0.0 && (c2 < 0.0 || (c2 == 0.0 && c1 < 0.0))) {
    throw Unbounded("minimize_cubic_1d: model is unbounded below on [0, inf)");
  }

  auto q = [&](double a) { return a * (c1 + a * (0.5 * c2 + a * c3 / 3.0)); };

  std::vector<double> candidates{0.0};
  if (bounded) candidates.push_back(alpha_max);
  auto consider = [&](double r) {
    if (std::isfinite(r) && r > 0.0 && r < alpha_max) candidates.push_back(r);
  };
  // Stationary points: c1 + c2 a + c3 a^2 = 0.
  if (c3 == 0.0) {
    if (c2 != 0.0) consider(-c1 / c2);
  } else {
    const double disc = c2 * c2 - 4.0 * c3 * c1;
    if (disc >= 0.0) {
      const double qq = -0.5 * (c2 + std::copysign(std::sqrt(disc), c2));
      consider(qq / c3);
      if (qq != 0.0) consider(c1 / qq);
    }
  }

  std::sort(candidates.begin(), candidates.end());
  double best = candidates.front();
  double best_value = q(best);
  for (double a : candidates) {
    const double v = q(a);
    if (v < best_value) {
      best = a;
      best_value = v;
    }
  }
  return best;
}

BacktrackResult backtrack_to_bound(const Vec& s, const Vec& lower, double b) {
  if (s.size() != lower.size()) throw DimensionMismatch("backtrack_to_bound: size mismatch");
  if (!(b > 0.0 && b < 1.0)) throw ConfigError("backtrack_to_bound: b must lie in (0, 1)");
  BacktrackResult out{s, 0};
  for (; out.reductions <= kMaxBacktracks; ++out.reductions) {
    if ((out.step.array() >= lower.array()).all()) return out;
    out.step *= b;
  }
  out.step.setZero();
  return out;
}

}  // namespace arcbip::cubic
