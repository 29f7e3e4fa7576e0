#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "arcbip/errors.hpp"
#include "arcbip/nlp_model.hpp"

using namespace arcbip;

namespace {

// f = |x|^2, g = x_0 - 1.
NlpProblem quadratic(int n) {
  NlpProblem p;
  p.n = n;
  p.m = 1;
  p.name = "quad";
  p.objective = [](const Vec& x) { return x.squaredNorm(); };
  p.constraints = [](const Vec& x) { return Vec::Constant(1, x[0] - 1.0); };
  p.objective_gradient = [](const Vec& x) { return Vec(2.0 * x); };
  p.constraint_jacobian = [n](const Vec&) {
    Mat a = Mat::Zero(n, 1);
    a(0, 0) = 1.0;
    return a;
  };
  return p;
}

}  // namespace

TEST(EvaluateAll, QuadraticAtOrigin) {
  EvalCounters c;
  const auto d = evaluate_all(quadratic(2), Vec::Zero(2), c);
  EXPECT_EQ(d.f, 0.0);
  EXPECT_EQ(d.grad_f, Vec::Zero(2));
  EXPECT_EQ(c.nf, 1);
  EXPECT_EQ(c.ng, 1);
  EXPECT_EQ(c.ngrad, 1);
  EXPECT_EQ(c.nj, 1);
}

TEST(EvaluateAll, AffineConstraint) {
  EvalCounters c;
  const auto d = evaluate_all(quadratic(1), Vec::Constant(1, 3.0), c);
  EXPECT_EQ(d.g[0], 2.0);
  EXPECT_EQ(d.A(0, 0), 1.0);
}

TEST(Evaluate, NonFiniteRejected) {
  NlpProblem p = quadratic(1);
  p.objective = [](const Vec&) { return std::numeric_limits<double>::quiet_NaN(); };
  EvalCounters c;
  EXPECT_THROW(eval_objective(p, Vec::Zero(1), c), NonFiniteEvaluation);
}

TEST(Evaluate, WrongShapeRejected) {
  NlpProblem p = quadratic(2);
  p.constraints = [](const Vec&) { return Vec::Zero(3); };
  EvalCounters c;
  EXPECT_THROW(eval_constraints(p, Vec::Zero(2), c), DimensionMismatch);
}

TEST(Validate, MissingCallback) {
  NlpProblem p = quadratic(2);
  p.objective_gradient = nullptr;
  EXPECT_THROW(p.validate(), ConfigError);
}

TEST(FiniteDifference, QuadraticExact) {
  Vec x(2);
  x << 1, 2;
  EXPECT_LE(finite_difference_check(quadratic(2), x, 1e-6), 1e-6);
}

TEST(FiniteDifference, AffineConstraintExact) {
  EXPECT_LE(finite_difference_check(quadratic(3), Vec::Constant(3, -7.5), 1e-6), 1e-6);
}

TEST(FiniteDifference, DetectsWrongGradient) {
  NlpProblem p = quadratic(2);
  p.objective_gradient = [](const Vec& x) { return Vec(3.0 * x); };
  EXPECT_GT(finite_difference_check(p, Vec::Ones(2), 1e-6), 0.1);
}
