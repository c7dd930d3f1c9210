#pragma once

#include <string>
#include <vector>

#include "fewnomial/io.hpp"
#include "fewnomial/random.hpp"
#include "fewnomial/spectrum.hpp"
#include "oracles.hpp"

namespace fixtures {

inline std::string data(const std::string& name) { return std::string(FEWNOMIAL_DATA_DIR) + "/" + name; }

inline fewnomial::Spectrum pentagon() { return fewnomial::read_spectrum(data("pentagon.txt")); }
inline fewnomial::Spectrum parallelogram() { return fewnomial::read_spectrum(data("parallelogram.txt")); }
inline fewnomial::Spectrum circles() { return fewnomial::read_spectrum(data("circles.txt")); }

inline fewnomial::Spectrum from_rows(const oracle::Rows& rows) {
  fewnomial::Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.at(0).size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return fewnomial::Spectrum(m);
}

inline oracle::Rows to_rows(const fewnomial::Matrix& m) {
  oracle::Rows out(static_cast<std::size_t>(m.rows()), std::vector<double>(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
  return out;
}

// Random integer spectrum with n rows and n + k distinct columns, full
// affine dimension. Entries in [0, n + k + 2].
inline fewnomial::Spectrum random_spectrum(fewnomial::Rng& rng, int n, int k) {
  for (;;) {
    fewnomial::Matrix a(n, n + k);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n + k; ++j) a(i, j) = std::floor(fewnomial::uniform(rng, 0.0, n + k + 3.0));
    bool distinct = true;
    for (int x = 0; x < n + k && distinct; ++x)
      for (int y = x + 1; y < n + k && distinct; ++y) distinct = (a.col(x) - a.col(y)).cwiseAbs().maxCoeff() > 0.5;
    if (!distinct) continue;
    if (oracle::rank(oracle::lift(to_rows(a))) != n + 1) continue;
    return fewnomial::Spectrum(a);
  }
}

// Basis of the nullspace as published for the pentagon and the parallelogram
// (four decimals), columns are the two basis vectors.
inline fewnomial::Matrix pentagon_published_basis() {
  fewnomial::Matrix b(5, 2);
  b << 0.5079, 0.5420, -0.8069, 0.1199, 0.1721, -0.7974, 0.2267, -0.0851, -0.0997, 0.2206;
  return b;
}

inline fewnomial::Matrix parallelogram_published_basis() {
  fewnomial::Matrix b(5, 2);
  b << 0.4335, 0.3127, -0.8035, 0.2002, -0.0635, -0.8256, 0.4018, -0.1001, 0.0317, 0.4128;
  return b;
}

}  // namespace fixtures
