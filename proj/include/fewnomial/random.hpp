#pragma once

#include <cstdint>
#include <random>

#include "fewnomial/linalg.hpp"

namespace fewnomial {

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) {
  // Spread nearby seeds apart before seeding the engine.
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    0x9e3779b9u};
  return Rng(seq);
}

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Vector gaussian_vector(Rng& rng, int dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = normal(rng);
  return v;
}

inline Vector random_unit_vector(Rng& rng, int dim) {
  Vector v = gaussian_vector(rng, dim);
  while (v.norm() < 1e-12) v = gaussian_vector(rng, dim);
  return v.normalized();
}

/// Haar-ish random orthogonal matrix from the QR factor of a Gaussian matrix.
inline Matrix random_orthogonal(Rng& rng, int dim) {
  Matrix g(dim, dim);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = normal(rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  }
  return q;
}

}  // namespace fewnomial
