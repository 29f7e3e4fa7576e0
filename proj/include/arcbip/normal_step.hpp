#pragma once

#include <optional>

#include "arcbip/nlp_model.hpp"

namespace arcbip::normal {

struct NormalParams {
  double xi = 0.8;       // contraction of the cubic weight, sigma~ = sigma / xi^3
  double tau = 0.995;    // fraction to the boundary
  double b = 0.5;        // backtracking factor
  double gamma_n = 0.9;  // Cauchy decrease fraction
};

struct NormalStepResult {
  Vec n_x;
  Vec n_y;
  double npred = 0.0;
  double npred_cauchy = 0.0;
  bool used_cauchy_fallback = false;
  int backtracks = 0;
  std::optional<Vec> omega;  // n = (A; Y^2) omega when recorded
};

struct CauchyPoint {
  double alpha = 0.0;
  Vec n_x;  // unscaled direction n^c; the step is alpha * n^c
  Vec n_y;
  double npred = 0.0;
};

// |g+y| - |g+y + A^T n_x + n_y| - sigma~/3 |(n_x; Y^{-1} n_y)|^3
double eval_npred(const Mat& a, const Vec& y, const Vec& g, double sigma_tilde, const Vec& n_x,
                  const Vec& n_y);

// Steepest-descent point of the scaled normal model along
// u^c = -(A; Y)(g + y), limited by u_y >= -xi tau e.
//
// If the exact 1-D minimizer of the squared-residual model yields a negative
// npred (possible when |g + y| > 1), alpha is reduced by the factor b until
// npred >= 0.
CauchyPoint normal_cauchy_point(const Mat& a, const Vec& y, const Vec& g, double sigma_tilde,
                                const NormalParams& params);

NormalStepResult solve_normal(const Mat& a, const Vec& y, const Vec& g, double sigma,
                              const NormalParams& params);

}  // namespace arcbip::normal
