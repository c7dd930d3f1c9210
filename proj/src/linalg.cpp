#include "fewnomial/linalg.hpp"

#include <algorithm>
#include <limits>

namespace fewnomial {

namespace {

int rank_from_singular_values(const Vector& sv, double rel_tol) {
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cutoff = rel_tol * sv(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++rank;
  }
  return rank;
}

}  // namespace

int numerical_rank(const Matrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return rank_from_singular_values(svd.singularValues(), rel_tol);
}

Matrix orthonormal_null_space(const Matrix& m, double rel_tol) {
  const Eigen::Index cols = m.cols();
  if (m.rows() == 0) return Matrix::Identity(cols, cols);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const int rank = rank_from_singular_values(svd.singularValues(), rel_tol);
  return svd.matrixV().rightCols(cols - rank);
}

Matrix orthonormal_row_space(const Matrix& m, double rel_tol) {
  if (m.size() == 0) return Matrix(m.cols(), 0);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const int rank = rank_from_singular_values(svd.singularValues(), rel_tol);
  return svd.matrixV().leftCols(rank);
}

double condition_number(const Matrix& m) {
  if (m.size() == 0) return 1.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const Vector& sv = svd.singularValues();
  const int rank = rank_from_singular_values(sv, kRankTolerance);
  if (rank == 0) return std::numeric_limits<double>::infinity();
  return sv(0) / sv(rank - 1);
}

}  // namespace fewnomial
