#pragma once

#include <Eigen/Dense>

namespace fewnomial {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;

// Relative singular-value cutoff used for every rank decision.
inline constexpr double kRankTolerance = 1e-9;

/// Rank of `m`: number of singular values above `rel_tol * sigma_max`.
int numerical_rank(const Matrix& m, double rel_tol = kRankTolerance);

/// Orthonormal basis (as columns) of the right nullspace of `m`, taken from
/// the trailing right singular vectors of a full SVD. Deterministic for a
/// fixed input. Returns a `cols x 0` matrix when the nullspace is trivial.
Matrix orthonormal_null_space(const Matrix& m, double rel_tol = kRankTolerance);

/// Orthonormal basis (as columns) of the row space of `m`.
Matrix orthonormal_row_space(const Matrix& m, double rel_tol = kRankTolerance);

/// Largest singular value over smallest nonzero one.
double condition_number(const Matrix& m);

}  // namespace fewnomial
