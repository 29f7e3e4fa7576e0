#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "arcbip/errors.hpp"
#include "arcbip/tangential_step.hpp"

using namespace arcbip;
using tangential::TangentialData;

namespace {

const double kRt2 = std::sqrt(2.0);

// n = m = 1, y = 1, N = (1, -1)/sqrt 2.
TangentialData scalar_data(double grad_f, double b, double mu, double sigma) {
  TangentialData d;
  d.basis = Mat(2, 1);
  d.basis << 1.0 / kRt2, -1.0 / kRt2;
  d.b = Mat::Constant(1, 1, b);
  d.mu = mu;
  d.y = Vec::Ones(1);
  d.grad_f = Vec::Constant(1, grad_f);
  d.n_x = Vec::Zero(1);
  d.n_y = Vec::Zero(1);
  d.sigma = sigma;
  return d;
}

double tpred_ref(const TangentialData& d, const Vec& tx, const Vec& ty) {
  const Vec yi = d.y.cwiseInverse();
  const Vec yi2 = yi.cwiseAbs2();
  const double lin = d.grad_f.dot(tx) + tx.dot(d.b * d.n_x) - d.mu * yi.dot(ty) +
                     d.mu * ty.dot(yi2.cwiseProduct(d.n_y));
  const double quad = 0.5 * tx.dot(d.b * tx) + 0.5 * d.mu * ty.dot(yi2.cwiseProduct(ty));
  Vec scaled(tx.size() + ty.size());
  scaled << tx, ty.cwiseProduct(yi);
  return -(lin + quad) - d.sigma / 3.0 * std::pow(scaled.norm(), 3);
}

}  // namespace

TEST(TangentialGradient, Example) {
  const Vec pc = tangential::tangential_gradient(scalar_data(1.0, 0.0, 1.0, 1.0));
  EXPECT_NEAR(pc[0], -kRt2, 1e-15);
}

TEST(TangentialGradient, VanishesAtStationaryData) {
  // grad f + B n_x = 0 and Y^{-1} e = Y^{-2} n_y.
  TangentialData d = scalar_data(0.0, 1.0, 0.7, 1.0);
  d.y = Vec::Constant(1, 2.0);
  d.n_y = d.y;
  EXPECT_NEAR(tangential::tangential_gradient(d).norm(), 0.0, 1e-15);
}

TEST(EvalTpred, Zero) {
  const auto d = scalar_data(1.0, 2.0, 1.0, 1.0);
  EXPECT_EQ(tangential::eval_tpred(d, Vec::Zero(1), Vec::Zero(1)), 0.0);
}

TEST(EvalTpred, PureXStep) {
  TangentialData d = scalar_data(2.0, 0.0, 0.0, 3.0);
  const Vec tx = Vec::Constant(1, -0.5);
  EXPECT_NEAR(tangential::eval_tpred(d, tx, Vec::Zero(1)), 2.0 * 0.5 - 3.0 / 3.0 * 0.125, 1e-15);
}

TEST(TangentialCauchy, ZeroGradient) {
  TangentialData d = scalar_data(0.0, 1.0, 1.0, 1.0);
  d.y = Vec::Constant(1, 2.0);
  d.n_y = d.y;
  const auto c = tangential::tangential_cauchy_point(d, 0.995);
  EXPECT_EQ(c.beta, 0.0);
  EXPECT_EQ(c.tpred, 0.0);
}

TEST(TangentialCauchy, GoldenRatio) {
  // Reduced Hessian 1, |p_c| = 1, sigma |DNp_c|^3 = 1, bound inactive.
  const auto d = scalar_data(kRt2 - 1.0, 1.0, 1.0, 1.0);
  ASSERT_NEAR(tangential::tangential_gradient(d).norm(), 1.0, 1e-15);
  ASSERT_NEAR(tangential::reduced_hessian(d)(0, 0), 1.0, 1e-15);
  const auto c = tangential::tangential_cauchy_point(d, 0.995);
  EXPECT_NEAR(c.beta, (std::sqrt(5.0) - 1.0) / 2.0, 1e-12);
}

TEST(TangentialCauchy, BindingBound) {
  // grad f = -(1 + sqrt 2) gives p_c = 1, so N_y p_c = -1/sqrt 2 < 0 and
  // beta_max = tau sqrt 2.
  const auto d = scalar_data(-(1.0 + kRt2), 1.0, 1.0, 1.0);
  ASSERT_NEAR(tangential::tangential_gradient(d)[0], 1.0, 1e-15);
  const auto c = tangential::tangential_cauchy_point(d, 0.1 / kRt2);
  EXPECT_NEAR(c.beta, 0.1, 1e-12);
}

TEST(TangentialBasis, Properties) {
  std::mt19937 rng(8);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> pos(1e-3, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 5, m = 1 + (trial / 5) % 4;
    Mat a(n, m);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) a(i, j) = nd(rng);
    Vec y(m);
    for (int j = 0; j < m; ++j) y[j] = pos(rng);
    const Mat basis = tangential::tangential_basis(a, y);
    ASSERT_EQ(basis.rows(), n + m);
    ASSERT_EQ(basis.cols(), n);
    const Mat constraint = a.transpose() * basis.topRows(n) + basis.bottomRows(m);
    EXPECT_LT(constraint.norm(), 1e-11 * (1 + a.norm()) * (1 + y.maxCoeff()));
    Mat scaled = basis;
    scaled.bottomRows(m) = y.cwiseInverse().asDiagonal() * basis.bottomRows(m);
    EXPECT_LT((scaled.transpose() * scaled - Mat::Identity(n, n)).norm(), 1e-11);
  }
}

TEST(TangentialBasis, RejectsNonPositiveSlack) {
  EXPECT_THROW(tangential::tangential_basis(Mat::Ones(2, 1), Vec::Zero(1)), DomainError);
  EXPECT_THROW(tangential::tangential_basis(Mat::Ones(2, 1), Vec::Ones(2)), DimensionMismatch);
}

TEST(SolveTangential, RandomInvariants) {
  std::mt19937 rng(19);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> pos(0.05, 3.0);
  tangential::TangentialParams params;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 4, m = 1 + (trial / 4) % 3;
    TangentialData d;
    Mat a(n, m);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) a(i, j) = nd(rng);
    d.y = Vec(m);
    for (int j = 0; j < m; ++j) d.y[j] = pos(rng);
    d.basis = tangential::tangential_basis(a, d.y);
    Mat r(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r(i, j) = nd(rng);
    d.b = 0.5 * (r + r.transpose());
    d.mu = std::exp(nd(rng) - 2.0);
    d.grad_f = Vec(n);
    d.n_x = Vec(n);
    for (int i = 0; i < n; ++i) {
      d.grad_f[i] = nd(rng);
      d.n_x[i] = 0.1 * nd(rng);
    }
    d.n_y = Vec(m);
    for (int j = 0; j < m; ++j) d.n_y[j] = -0.3 * d.y[j] * std::abs(nd(rng)) / (1 + std::abs(nd(rng)));
    d.sigma = std::exp(nd(rng));
    const auto res = tangential::solve_tangential(d, params);
    EXPECT_GE(res.tpred, 0.0);
    EXPECT_GE(res.tpred, params.gamma_t * res.tpred_cauchy - 1e-12);
    EXPECT_NEAR(res.tpred, tpred_ref(d, res.t_x, res.t_y), 1e-10 * (1 + std::abs(res.tpred)));
    EXPECT_LT((a.transpose() * res.t_x + res.t_y).norm(), 1e-10 * (1 + res.t_x.norm()));
    const Vec dy = d.n_y + res.t_y;
    EXPECT_GE(dy.cwiseQuotient(d.y).minCoeff(), -params.tau - 1e-12);
  }
}
