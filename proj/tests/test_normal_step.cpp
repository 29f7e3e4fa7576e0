#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "arcbip/normal_step.hpp"

using namespace arcbip;
using normal::NormalParams;

namespace {

Vec v1(double a) { return Vec::Constant(1, a); }
Mat m1(double a) { return Mat::Constant(1, 1, a); }

// Independent evaluation of the scaled normal model decrease.
double npred_ref(const Mat& a, const Vec& y, const Vec& g, double st, const Vec& nx,
                 const Vec& ny) {
  const Vec r = g + y;
  Vec scaled(nx.size() + ny.size());
  scaled << nx, ny.cwiseQuotient(y);
  return r.norm() - (r + a.transpose() * nx + ny).norm() - st / 3.0 * std::pow(scaled.norm(), 3);
}

}  // namespace

TEST(EvalNpred, ZeroStep) {
  EXPECT_EQ(normal::eval_npred(m1(1), v1(1), v1(-0.5), 1.0, v1(0), v1(0)), 0.0);
}

TEST(EvalNpred, CancelledResidual) {
  // g + y = 0.5 with y = 1.
  const double tiny = normal::eval_npred(m1(1), v1(1), v1(-0.5), 1e-12, v1(-0.25), v1(-0.25));
  EXPECT_NEAR(tiny, 0.5, 1e-12);
  const double big = normal::eval_npred(m1(1), v1(1), v1(-0.5), 3.0, v1(-0.25), v1(-0.25));
  EXPECT_NEAR(big, 0.5 - std::pow(std::sqrt(0.125), 3), 1e-14);
  EXPECT_NEAR(big, 0.4558, 1e-4);
}

TEST(NormalCauchy, ZeroResidual) {
  const auto c = normal::normal_cauchy_point(m1(1), v1(2), v1(-2), 1.0, NormalParams{});
  EXPECT_EQ(c.alpha, 0.0);
  EXPECT_EQ(c.npred, 0.0);
}

TEST(NormalCauchy, SmallSigmaRemovesResidual) {
  NormalParams p;
  p.xi = 0.999;
  p.tau = 0.999;
  const auto c = normal::normal_cauchy_point(m1(1), v1(1), v1(-0.5), 1e-12, p);
  EXPECT_NEAR(c.alpha * c.n_x[0], -0.25, 1e-6);
  EXPECT_NEAR(c.npred, 0.5, 1e-6);
}

TEST(NormalCauchy, NpredNonNegativeOnLargeResidual) {
  // The squared-residual minimiser over-shoots the unsquared model here.
  const auto c = normal::normal_cauchy_point(m1(1), v1(1), v1(9), 100.0, NormalParams{});
  EXPECT_GE(c.npred, 0.0);
}

TEST(SolveNormal, ZeroResidual) {
  Mat a(2, 2);
  a << 1, 2, 3, 4;
  const Vec y = Vec::Constant(2, 0.5);
  const auto r = normal::solve_normal(a, y, -y, 1.0, NormalParams{});
  EXPECT_EQ(r.n_x.norm(), 0.0);
  EXPECT_EQ(r.n_y.norm(), 0.0);
  EXPECT_EQ(r.npred, 0.0);
}

TEST(SolveNormal, LargeResidualBacktracks) {
  NormalParams p;  // xi tau = 0.796
  const auto r = normal::solve_normal(m1(1), v1(1), v1(9), 1e-3, p);
  const double bound = -p.xi * p.tau;
  EXPECT_GE(r.n_y[0], bound);
  if (r.backtracks > 0) {
    EXPECT_LT(r.n_y[0] / p.b, bound);
  }
  EXPECT_GE(r.npred, 0.0);
}

TEST(SolveNormal, RandomInvariants) {
  std::mt19937 rng(41);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> pos(0.05, 3.0);
  NormalParams p;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 4, m = 1 + (trial / 4) % 3;
    Mat a(n, m);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) a(i, j) = nd(rng);
    Vec y(m), g(m);
    for (int j = 0; j < m; ++j) {
      y[j] = pos(rng);
      g[j] = 2.0 * nd(rng);
    }
    const double sigma = std::exp(2.0 * nd(rng));
    const auto r = normal::solve_normal(a, y, g, sigma, p);
    const double st = sigma / std::pow(p.xi, 3);
    EXPECT_GE(r.npred, 0.0);
    EXPECT_GE(r.npred, p.gamma_n * r.npred_cauchy - 1e-12);
    EXPECT_NEAR(r.npred, npred_ref(a, y, g, st, r.n_x, r.n_y), 1e-10 * (1 + std::abs(r.npred)));
    EXPECT_GE((r.n_y.cwiseQuotient(y)).minCoeff(), -p.xi * p.tau - 1e-14);
  }
}
