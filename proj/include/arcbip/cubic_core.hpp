#pragma once

#include <limits>

#include "arcbip/nlp_model.hpp"

namespace arcbip::cubic {

// min_s  grad^T s + 1/2 s^T hess s + sigma/3 |s|^3
struct CubicSubproblem {
  Vec grad;
  Mat hess;
  double sigma = 1.0;
};

struct CubicSolution {
  Vec s;
  double multiplier = 0.0;  // sigma * |s|
  double model_value = 0.0;
  bool hard_case = false;
  int iterations = 0;
};

double cubic_model_value(const CubicSubproblem& sp, const Vec& s);

// Global minimizer of the cubic model.
//
// The hessian is eigendecomposed once; the multiplier nu = sigma |s(nu)| with
// s(nu) = -(hess + nu I)^{-1} grad is found by a bracketed Newton iteration on
// 1/|s(nu)| - sigma/nu over nu > max(0, -lambda_min). When grad has no
// component along the leftmost eigenspace and no interior root exists, the
// leftmost eigenvector is added to reach |s| = nu/sigma.
//
// Throws MaxSecularIterations when the root is not located within 200
// iterations, ConfigError for sigma <= 0 or tol <= 0.
CubicSolution solve_cubic(const CubicSubproblem& sp, double tol = 1e-10);

// Global minimizer over [0, alpha_max] of c1 a + c2 a^2 / 2 + c3 a^3 / 3.
// alpha_max may be +infinity; Unbounded is thrown when the model is then
// unbounded below. Ties resolve to the smaller argument.
double minimize_cubic_1d(double c1, double c2, double c3,
                         double alpha_max = std::numeric_limits<double>::infinity());

struct BacktrackResult {
  Vec step;
  int reductions = 0;
};

// Scales s by b^j for the smallest j >= 0 with b^j s >= lower componentwise.
// lower must be strictly negative wherever finite; the zero step is returned
// if 64 reductions do not suffice.
BacktrackResult backtrack_to_bound(const Vec& s, const Vec& lower, double b);

}  // namespace arcbip::cubic
