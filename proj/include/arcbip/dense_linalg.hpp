#pragma once

#include "arcbip/nlp_model.hpp"

namespace arcbip::linalg {

struct SymmetricEigen {
  Vec values;   // ascending
  Mat vectors;  // orthonormal, column i pairs with values[i]
};

// Orthonormal basis of null(M^T) for a tall M of full column rank.
// Result has shape rows(M) x (rows(M) - cols(M)).
// Throws RankDeficient when a singular value of M falls below 1e-12 * sigma_max.
Mat null_space_basis(const Mat& m);

// Throws NotSymmetric when |H - H^T| exceeds 1e-12 * max(1, |H|).
SymmetricEigen symmetric_eigendecomposition(const Mat& h);

// Solves (H + shift I) s = rhs. Throws NotPositiveDefinite when the shifted
// matrix has a nonpositive eigenvalue.
Vec solve_shifted(const Mat& h, double shift, const Vec& rhs);

// argmin_w |M w - b| for M of full column rank.
Vec least_squares(const Mat& m, const Vec& b);

}  // namespace arcbip::linalg
