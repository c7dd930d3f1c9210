#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "fewnomial/linalg.hpp"

namespace fewnomial {

/// Exponent matrix of an exponential sum: `n` rows, `n + k` columns, one
/// column per term. Columns are pairwise distinct.
class Spectrum {
 public:
  /// Throws InvalidSpectrum when the shape is empty, there are fewer than
  /// `n + 1` columns, an entry is not finite, or two columns coincide
  /// (max-norm tolerance 1e-12).
  explicit Spectrum(Matrix exponents);

  int n() const { return static_cast<int>(exponents_.rows()); }
  int k() const { return static_cast<int>(exponents_.cols() - exponents_.rows()); }
  int terms() const { return static_cast<int>(exponents_.cols()); }

  const Matrix& matrix() const { return exponents_; }
  Vector column(int j) const { return exponents_.col(j); }

  /// Sub-spectrum made of the listed columns (no validation of `k >= 1`).
  Matrix columns(const std::vector<int>& indices) const;

 private:
  Matrix exponents_;
};

/// `A` with an all-ones row prepended.
struct LiftedSpectrum {
  Matrix lifted;
  int affine_dim = 0;
};

LiftedSpectrum lift(const Spectrum& spec);

/// Lift of an arbitrary point configuration given as columns.
Matrix lift_columns(const Matrix& points);

/// Affine dimension d(A) = rank(lift) - 1.
int affine_dim(const Spectrum& spec);
int affine_dim_of(const Matrix& points);

/// Basis of the right nullspace of the lifted spectrum, stored as the
/// `(n + k) x (n + k - d - 1)` matrix whose rows are the beta_i.
class NullBasis {
 public:
  NullBasis() = default;
  explicit NullBasis(Matrix basis) : basis_(std::move(basis)) {}

  const Matrix& matrix() const { return basis_; }
  int rows() const { return static_cast<int>(basis_.rows()); }
  int cols() const { return static_cast<int>(basis_.cols()); }
  RowVector row(int i) const { return basis_.row(i); }

  /// Row whose max-norm is below 1e-9.
  bool is_zero_row(int i) const;

  /// Basis with columns mixed by an invertible matrix (B * mixing).
  NullBasis mixed(const Matrix& mixing) const { return NullBasis(basis_ * mixing); }

 private:
  Matrix basis_;
};

/// Orthonormal nullspace basis of the lifted spectrum. Throws ZeroNullspace
/// when `n + k - d - 1 == 0`.
NullBasis null_basis(const Spectrum& spec);

/// Max-abs entry of `lift * B` and the largest deviation of `B^T B` from
/// the identity; used to validate supplied bases.
double nullspace_residual(const Spectrum& spec, const NullBasis& basis);
double orthonormality_residual(const NullBasis& basis);

/// True iff some row of B vanishes, i.e. one column is an apex over the
/// affine span of the others.
bool is_pyramidal(const NullBasis& basis);
bool is_pyramidal(const Spectrum& spec);

/// A proper face of Conv(A) together with the columns lying on it.
struct Face {
  Vector normal;             // unit outer normal, inside the affine hull of A
  std::vector<int> columns;  // 0-based indices into A, ascending
  int dim = 0;               // affine dimension of the face
  int codefect = 0;          // k_w = #columns - dim
  bool non_simplicial = false;

  int size() const { return static_cast<int>(columns.size()); }
};

/// All proper faces (vertices included), sorted by dimension and then by
/// column list. Supports n <= 3; throws UnsupportedDimension otherwise.
std::vector<Face> faces(const Spectrum& spec);

/// Faces carrying at least `dim + 2` columns.
std::vector<Face> non_simplicial_faces(const Spectrum& spec);

bool is_combinatorially_simplicial(const Spectrum& spec);

/// Distinct points [beta_{i,1} : beta_{i,2}] of P^1 spanned by the nonzero
/// rows of a two-column basis, each returned as a unit vector whose first
/// nonzero coordinate is positive. Throws WrongColumnCount otherwise.
std::vector<Eigen::Vector2d> projective_row_classes(const NullBasis& basis);

/// Numerical surrogate for defectiveness: true when the finite-difference
/// Jacobian of the reduced contour map has rank below `cols - 1` at every
/// one of `samples` random parameters.
bool is_defective_heuristic(const Spectrum& spec, int samples, std::uint64_t seed);

}  // namespace fewnomial
