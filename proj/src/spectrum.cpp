#include "fewnomial/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "fewnomial/errors.hpp"
#include "fewnomial/random.hpp"

namespace fewnomial {

namespace {

constexpr double kDistinctColumnTol = 1e-12;
constexpr double kZeroRowTol = 1e-9;
constexpr double kFaceTol = 1e-9;
constexpr double kProjectiveTol = 1e-8;

using ColumnSet = std::vector<int>;

// Hull geometry expressed in coordinates of the affine span of the columns.
struct HullFrame {
  Matrix basis;   // n x d, orthonormal directions of the affine hull
  Matrix coords;  // d x N, column j = basis^T (a_j - mean)
};

HullFrame hull_frame(const Matrix& points, int d) {
  const Vector mean = points.rowwise().mean();
  const Matrix centered = points.colwise() - mean;
  Eigen::JacobiSVD<Matrix> svd(centered, Eigen::ComputeFullU);
  HullFrame frame;
  frame.basis = svd.matrixU().leftCols(d);
  frame.coords = frame.basis.transpose() * centered;
  return frame;
}

int affine_dim_of_subset(const Matrix& coords, const ColumnSet& subset) {
  if (subset.size() <= 1) return 0;
  Matrix sub(coords.rows(), static_cast<Eigen::Index>(subset.size()));
  for (std::size_t i = 0; i < subset.size(); ++i) sub.col(static_cast<Eigen::Index>(i)) = coords.col(subset[i]);
  const Vector mean = sub.rowwise().mean();
  // Absolute cutoff: the coordinates are O(1) after centering, and collinear
  // subsets must register as rank-deficient even when small.
  Eigen::JacobiSVD<Matrix> svd(sub.colwise() - mean);
  const double scale = std::max(1.0, coords.cwiseAbs().maxCoeff());
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > kFaceTol * scale) ++rank;
  }
  return rank;
}

struct Facet {
  ColumnSet columns;
  Vector normal;  // in hull coordinates
};

// Keeps the candidate hyperplane {x : w.x = w.coords[anchor]} when every
// column lies on one side; returns the supporting facet with outer normal.
void try_supporting_hyperplane(const Matrix& coords, const Vector& direction, int anchor,
                               double tol, std::vector<Facet>& facets,
                               std::set<ColumnSet>& seen) {
  const Vector w = direction.normalized();
  const double h = w.dot(coords.col(anchor));
  const Eigen::Index count = coords.cols();
  bool all_below = true;
  bool all_above = true;
  ColumnSet on_plane;
  for (Eigen::Index j = 0; j < count; ++j) {
    const double s = w.dot(coords.col(j)) - h;
    if (s > tol) all_below = false;
    if (s < -tol) all_above = false;
    if (std::abs(s) <= tol) on_plane.push_back(static_cast<int>(j));
  }
  if (!all_below && !all_above) return;
  if (!seen.insert(on_plane).second) return;
  facets.push_back({on_plane, all_below ? w : Vector(-w)});
}

std::vector<Facet> enumerate_facets(const Matrix& coords) {
  const int d = static_cast<int>(coords.rows());
  const int count = static_cast<int>(coords.cols());
  const double tol = kFaceTol * std::max(1.0, coords.cwiseAbs().maxCoeff());
  std::vector<Facet> facets;
  std::set<ColumnSet> seen;

  if (d == 1) {
    for (int j = 0; j < count; ++j) {
      try_supporting_hyperplane(coords, Vector::Ones(1), j, tol, facets, seen);
    }
  } else if (d == 2) {
    for (int a = 0; a < count; ++a) {
      for (int b = a + 1; b < count; ++b) {
        const Eigen::Vector2d edge = coords.col(b) - coords.col(a);
        if (edge.norm() <= tol) continue;
        try_supporting_hyperplane(coords, Eigen::Vector2d(-edge.y(), edge.x()), a, tol, facets,
                                  seen);
      }
    }
  } else if (d == 3) {
    for (int a = 0; a < count; ++a) {
      for (int b = a + 1; b < count; ++b) {
        for (int c = b + 1; c < count; ++c) {
          const Eigen::Vector3d u = coords.col(b) - coords.col(a);
          const Eigen::Vector3d v = coords.col(c) - coords.col(a);
          const Eigen::Vector3d normal = u.cross(v);
          if (normal.norm() <= tol * std::max(1.0, u.norm() + v.norm())) continue;
          try_supporting_hyperplane(coords, normal, a, tol, facets, seen);
        }
      }
    }
  } else {
    throw UnsupportedDimension("face enumeration supports affine dimension <= 3");
  }
  return facets;
}

ColumnSet intersect(const ColumnSet& a, const ColumnSet& b) {
  ColumnSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool contains(const ColumnSet& outer, const ColumnSet& inner) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

RowVector reduced_point(const Matrix& basis, const Vector& lambda) {
  RowVector xi = RowVector::Zero(basis.cols());
  for (Eigen::Index i = 0; i < basis.rows(); ++i) {
    const RowVector beta = basis.row(i);
    if (beta.cwiseAbs().maxCoeff() < kZeroRowTol) continue;
    xi += std::log(std::abs(beta.dot(lambda))) * beta;
  }
  return xi;
}

}  // namespace

Spectrum::Spectrum(Matrix exponents) : exponents_(std::move(exponents)) {
  if (exponents_.rows() < 1) throw InvalidSpectrum("spectrum needs n >= 1 rows");
  if (exponents_.cols() < exponents_.rows() + 1) {
    std::ostringstream msg;
    msg << "spectrum needs n + k columns with k >= 1; got n = " << exponents_.rows() << " and "
        << exponents_.cols() << " columns";
    throw InvalidSpectrum(msg.str());
  }
  if (!exponents_.allFinite()) throw InvalidSpectrum("spectrum has non-finite entries");
  for (Eigen::Index a = 0; a < exponents_.cols(); ++a) {
    for (Eigen::Index b = a + 1; b < exponents_.cols(); ++b) {
      if ((exponents_.col(a) - exponents_.col(b)).cwiseAbs().maxCoeff() < kDistinctColumnTol) {
        std::ostringstream msg;
        msg << "columns " << a + 1 << " and " << b + 1 << " of the spectrum coincide";
        throw InvalidSpectrum(msg.str());
      }
    }
  }
}

Matrix Spectrum::columns(const std::vector<int>& indices) const {
  Matrix out(exponents_.rows(), static_cast<Eigen::Index>(indices.size()));
  for (std::size_t i = 0; i < indices.size(); ++i) {
    out.col(static_cast<Eigen::Index>(i)) = exponents_.col(indices[i]);
  }
  return out;
}

Matrix lift_columns(const Matrix& points) {
  Matrix lifted(points.rows() + 1, points.cols());
  lifted.row(0).setOnes();
  lifted.bottomRows(points.rows()) = points;
  return lifted;
}

LiftedSpectrum lift(const Spectrum& spec) {
  LiftedSpectrum out;
  out.lifted = lift_columns(spec.matrix());
  out.affine_dim = numerical_rank(out.lifted) - 1;
  return out;
}

int affine_dim(const Spectrum& spec) { return lift(spec).affine_dim; }

int affine_dim_of(const Matrix& points) { return numerical_rank(lift_columns(points)) - 1; }

bool NullBasis::is_zero_row(int i) const {
  if (basis_.cols() == 0) return true;
  return basis_.row(i).cwiseAbs().maxCoeff() < kZeroRowTol;
}

NullBasis null_basis(const Spectrum& spec) {
  const Matrix lifted = lift_columns(spec.matrix());
  Matrix basis = orthonormal_null_space(lifted);
  if (basis.cols() == 0) {
    throw ZeroNullspace("the lifted spectrum has full column rank (n + k - d - 1 = 0)");
  }
  return NullBasis(std::move(basis));
}

double nullspace_residual(const Spectrum& spec, const NullBasis& basis) {
  if (basis.cols() == 0) return 0.0;
  return (lift_columns(spec.matrix()) * basis.matrix()).cwiseAbs().maxCoeff();
}

double orthonormality_residual(const NullBasis& basis) {
  if (basis.cols() == 0) return 0.0;
  const Matrix gram = basis.matrix().transpose() * basis.matrix();
  return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

bool is_pyramidal(const NullBasis& basis) {
  for (int i = 0; i < basis.rows(); ++i) {
    if (basis.is_zero_row(i)) return true;
  }
  return false;
}

bool is_pyramidal(const Spectrum& spec) { return is_pyramidal(null_basis(spec)); }

std::vector<Face> faces(const Spectrum& spec) {
  if (spec.n() > 3) {
    throw UnsupportedDimension("face enumeration is limited to n <= 3");
  }
  const int d = affine_dim(spec);
  const HullFrame frame = hull_frame(spec.matrix(), d);
  const std::vector<Facet> facets = enumerate_facets(frame.coords);

  // Every face is an intersection of facets; close the facet sets under
  // pairwise intersection.
  std::set<ColumnSet> sets;
  for (const Facet& f : facets) sets.insert(f.columns);
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<ColumnSet> current(sets.begin(), sets.end());
    for (std::size_t a = 0; a < current.size(); ++a) {
      for (std::size_t b = a + 1; b < current.size(); ++b) {
        ColumnSet meet = intersect(current[a], current[b]);
        if (!meet.empty() && sets.insert(std::move(meet)).second) grew = true;
      }
    }
  }

  std::vector<Face> out;
  for (const ColumnSet& columns : sets) {
    Vector normal = Vector::Zero(d);
    for (const Facet& f : facets) {
      if (contains(f.columns, columns)) normal += f.normal;
    }
    Face face;
    face.columns = columns;
    face.normal = frame.basis * normal.normalized();
    face.dim = affine_dim_of_subset(frame.coords, columns);
    face.codefect = face.size() - face.dim;
    face.non_simplicial = face.dim <= d - 1 && face.size() >= face.dim + 2;
    out.push_back(std::move(face));
  }
  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.columns < b.columns;
  });
  return out;
}

std::vector<Face> non_simplicial_faces(const Spectrum& spec) {
  std::vector<Face> out;
  for (Face& f : faces(spec)) {
    if (f.non_simplicial) out.push_back(std::move(f));
  }
  return out;
}

bool is_combinatorially_simplicial(const Spectrum& spec) {
  for (const Face& f : faces(spec)) {
    if (f.size() != f.dim + 1) return false;
  }
  return true;
}

std::vector<Eigen::Vector2d> projective_row_classes(const NullBasis& basis) {
  if (basis.cols() != 2) {
    std::ostringstream msg;
    msg << "projective row classes need a two-column basis; got " << basis.cols();
    throw WrongColumnCount(msg.str());
  }
  std::vector<Eigen::Vector2d> classes;
  for (int i = 0; i < basis.rows(); ++i) {
    if (basis.is_zero_row(i)) continue;
    Eigen::Vector2d r = basis.row(i).transpose();
    r.normalize();
    if (r(0) < 0 || (r(0) == 0 && r(1) < 0)) r = -r;
    const bool known = std::any_of(classes.begin(), classes.end(), [&](const Eigen::Vector2d& c) {
      return std::abs(c(0) * r(1) - c(1) * r(0)) < kProjectiveTol;
    });
    if (!known) classes.push_back(r);
  }
  return classes;
}

bool is_defective_heuristic(const Spectrum& spec, int samples, std::uint64_t seed) {
  const NullBasis basis = null_basis(spec);
  const int c = basis.cols();
  if (c <= 1) return false;  // the contour is a point; expected rank 0
  const Matrix& b = basis.matrix();
  Rng rng = make_rng(seed);
  constexpr double kStep = 1e-6;

  for (int s = 0; s < samples; ++s) {
    Vector lambda;
    // Stay away from the hyperplane arrangement so the logs are well-behaved.
    for (int attempt = 0; attempt < 1000; ++attempt) {
      lambda = random_unit_vector(rng, c);
      double closest = 1.0;
      for (int i = 0; i < b.rows(); ++i) {
        if (basis.is_zero_row(i)) continue;
        closest = std::min(closest, std::abs(b.row(i).dot(lambda)) / b.row(i).norm());
      }
      if (closest > 1e-3) break;
    }
    Matrix jacobian(c, c);
    for (int m = 0; m < c; ++m) {
      Vector plus = lambda;
      Vector minus = lambda;
      plus(m) += kStep;
      minus(m) -= kStep;
      jacobian.col(m) = (reduced_point(b, plus) - reduced_point(b, minus)).transpose() / (2 * kStep);
    }
    // Absolute cutoff: a constant map leaves only finite-difference noise.
    const Vector sv = Eigen::JacobiSVD<Matrix>(jacobian).singularValues();
    if ((sv.array() > 1e-6).count() >= c - 1) return false;
  }
  return true;
}

}  // namespace fewnomial
