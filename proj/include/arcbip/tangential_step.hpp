#pragma once

#include "arcbip/nlp_model.hpp"

namespace arcbip::tangential {

struct TangentialParams {
  double tau = 0.995;
  double b = 0.5;
  double gamma_t = 0.9;
};

// Data shared by every tangential computation at one iterate.
// N has shape (n+m) x n with (A^T I) N = 0; N_x are its first n rows.
struct TangentialData {
  Mat basis;   // N
  Mat b;       // Hessian (approximation) of the Lagrangian in x
  double mu = 0.0;
  Vec y;
  Vec grad_f;
  Vec n_x;
  Vec n_y;
  double sigma = 1.0;

  Eigen::Index n() const { return grad_f.size(); }
  Eigen::Index m() const { return y.size(); }
  auto basis_x() const { return basis.topRows(n()); }
  auto basis_y() const { return basis.bottomRows(m()); }
};

struct TangentialStepResult {
  Vec t_x;
  Vec t_y;
  Vec p;
  double tpred = 0.0;
  double tpred_cauchy = 0.0;
  bool used_cauchy_fallback = false;
  int backtracks = 0;
};

struct TangentialCauchy {
  double beta = 0.0;
  Vec p_c;
  double tpred = 0.0;
};

// Basis N of {(t_x, t_y) : A^T t_x + t_y = 0} whose scaled form
// D N = (N_x; Y^{-1} N_y) has orthonormal columns, so |p| = |D N p|.
// Throws RankDeficient if (A; Y) loses column rank.
Mat tangential_basis(const Mat& a, const Vec& y);

// p^c = -N_x^T (grad f + B n_x) + mu N_y^T (Y^{-1} e - Y^{-2} n_y)
Vec tangential_gradient(const TangentialData& data);

// Reduced Hessian N_x^T B N_x + mu N_y^T Y^{-2} N_y.
Mat reduced_hessian(const TangentialData& data);

// Negated change of the tangential model from 0 to t, with the cubic term
// measured as |(t_x; Y^{-1} t_y)|^3.
double eval_tpred(const TangentialData& data, const Vec& t_x, const Vec& t_y);

// beta^c minimizes -tpred(beta N p^c) over 0 <= beta, n_y + beta N_y p^c >= -tau y.
TangentialCauchy tangential_cauchy_point(const TangentialData& data, double tau);

TangentialStepResult solve_tangential(const TangentialData& data, const TangentialParams& params);

}  // namespace arcbip::tangential
