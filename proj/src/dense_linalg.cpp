#include "arcbip/dense_linalg.hpp"

#include <algorithm>

#include "arcbip/errors.hpp"

namespace arcbip::linalg {

namespace {
constexpr double kRankTolerance = 1e-12;
constexpr double kSymmetryTolerance = 1e-12;
}  // namespace

Mat null_space_basis(const Mat& m) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  if (cols > rows) throw RankDeficient("null_space_basis: more columns than rows");

  // The trailing rows - cols columns of the full U factor span null(M^T).
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU);
  const Vec& sv = svd.singularValues();
  if (cols > 0) {
    const double smax = sv[0];
    if (!(smax > 0.0) || sv[cols - 1] < kRankTolerance * smax) {
      throw RankDeficient("null_space_basis: input is rank deficient");
    }
  }
  return svd.matrixU().rightCols(rows - cols);
}

SymmetricEigen symmetric_eigendecomposition(const Mat& h) {
  if (h.rows() != h.cols()) throw NotSymmetric("matrix is not square");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance * scale) {
    throw NotSymmetric("matrix is not symmetric");
  }
  const Mat sym = 0.5 * (h + h.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(sym);
  return {es.eigenvalues(), es.eigenvectors()};
}

Vec solve_shifted(const Mat& h, double shift, const Vec& rhs) {
  const SymmetricEigen eig = symmetric_eigendecomposition(h);
  const Vec shifted = eig.values.array() + shift;
  if (shifted.size() > 0 && !(shifted.minCoeff() > 0.0)) {
    throw NotPositiveDefinite("shifted matrix is not positive definite");
  }
  const Mat shifted_h = 0.5 * (h + h.transpose()) + shift * Mat::Identity(h.rows(), h.cols());
  Eigen::LLT<Mat> llt(shifted_h);
  Vec s = llt.solve(rhs);
  s += llt.solve(rhs - shifted_h * s);  // one step of iterative refinement
  return s;
}

Vec least_squares(const Mat& m, const Vec& b) {
  Eigen::ColPivHouseholderQR<Mat> qr(m);
  qr.setThreshold(kRankTolerance);
  if (qr.rank() < m.cols()) throw RankDeficient("least_squares: matrix is rank deficient");
  return qr.solve(b);
}

}  // namespace arcbip::linalg
