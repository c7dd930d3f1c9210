#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "fewnomial/chambers.hpp"
#include "fewnomial/contour.hpp"
#include "fewnomial/errors.hpp"
#include "fewnomial/zeroset.hpp"
#include "fixtures.hpp"

using namespace fewnomial;

namespace {

// Faces with more than dim + 2 columns give fibers of full dimension in the
// plane, whose complement has no well-defined chambers.
bool curve_fibers(const Spectrum& spec) {
  for (const Face& f : faces(spec))
    if (f.size() > f.dim + 2) return false;
  return true;
}

double crossing_reach(const ContourCloud& c) {
  double r = 0.0;
  for (const auto& p : contour_crossings(c, 1e3)) r = std::max(r, p.cwiseAbs().maxCoeff());
  return r;
}

Matrix random_invertible(Rng& rng, int dim) {
  for (;;) {
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) m(i, j) = uniform(rng, -2, 2);
    if (std::abs(m.determinant()) > 0.3) return m;
  }
}

int count(const ExpSum& g) {
  return g.n() == 1 ? count_components_1d(g).count : count_components_2d(g).count;
}

}  // namespace

TEST_CASE("xi is projectively invariant") {
  Rng rng = make_rng(61);
  for (int trial = 0; trial < 120; ++trial) {
    const Spectrum spec = fixtures::random_spectrum(rng, 1 + trial % 2, 2 + trial % 3);
    const NullBasis b = null_basis(spec);
    const Vector l = gaussian_vector(rng, b.cols());
    const double t = (trial % 3 ? 1.0 : -1.0) * std::exp(uniform(rng, -5, 5));
    const Vector x = xi(b, l);
    CHECK((xi(b, t * l) - x).norm() <= 1e-9 * std::max(1.0, x.norm()));
  }
}

TEST_CASE("lifted spectrum annihilates the basis") {
  Rng rng = make_rng(62);
  for (int trial = 0; trial < 120; ++trial) {
    const Spectrum spec = fixtures::random_spectrum(rng, 1 + trial % 2, 2 + trial % 3);
    const NullBasis b = null_basis(spec);
    CHECK((lift(spec).lifted * b.matrix()).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(nullspace_residual(spec, b) <= 1e-10);
  }
}

TEST_CASE("sign classes do not depend on the basis") {
  Rng rng = make_rng(63);
  for (int trial = 0; trial < 120; ++trial) {
    const int k = 3 + trial % 2;
    const Spectrum spec = fixtures::random_spectrum(rng, 1 + trial % 2, k);
    const NullBasis b = null_basis(spec);
    const Matrix m = random_invertible(rng, b.cols());
    const NullBasis bm = b.mixed(m);
    for (int s = 0; s < 20; ++s) {
      const Vector l = gaussian_vector(rng, b.cols());
      try {
        CHECK(sign_class(bm, m.inverse() * l) == sign_class(b, l));
      } catch (const HyperplaneHit&) {
      }
    }
    if (k == 3) {
      const auto a = realized_classes(b);
      const auto c = realized_classes(bm);
      CHECK(std::set<SignVector>(a.begin(), a.end()) == std::set<SignVector>(c.begin(), c.end()));
    }
  }
}

TEST_CASE("chamber counts do not depend on the basis") {
  Rng rng = make_rng(64);
  int spectra = 0;
  int compared = 0;
  while (spectra < 100) {
    const Spectrum spec = fixtures::random_spectrum(rng, 1 + spectra % 2, 3);
    if (!curve_fibers(spec)) continue;
    ++spectra;
    const NullBasis b = null_basis(spec);
    const NullBasis bq = b.mixed(random_orthogonal(rng, 2));
    SweepOptions o;
    o.resolution = 4000;
    for (const SignVector& s : realized_classes(b)) {
      const ContourCloud c1 = completed_contour(spec, b, s, o);
      const ContourCloud c2 = completed_contour(spec, bq, s, o);
      // a rotation moves the picture; the box must hold every crossing either way.
      // 512 cells lose thin chambers, so compare at the base resolution
      const double r = std::max({4.0, 1.5 * crossing_reach(c1) + 1, 1.5 * crossing_reach(c2) + 1});
      INFO(spec.matrix() << " class " << s.str());
      CHECK(chambers(c1, Box::square(r), 1024).count() == chambers(c2, Box::square(r), 1024).count());
      ++compared;
    }
  }
  CHECK(compared >= 300);
}

TEST_CASE("component counts are invariant under scaling and shifts") {
  Rng rng = make_rng(65);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 2;
    const int k = 2 + (trial / 2) % 3;
    const Spectrum spec = fixtures::random_spectrum(rng, n, k);
    Vector c(spec.terms());
    for (int j = 0; j < c.size(); ++j) c(j) = (uniform(rng, 0, 1) < 0.5 ? -1 : 1) * std::exp(uniform(rng, -1, 1));
    const double t = (trial % 3 ? 1.0 : -1.0) * std::exp(uniform(rng, -3, 3));
    const Vector shift = Vector::NullaryExpr(n, [&](Eigen::Index) { return uniform(rng, -1, 1); });
    // g(y + s) = sum c_j e^(a_j . s) e^(a_j . y)
    Vector shifted = c;
    for (int j = 0; j < c.size(); ++j) shifted(j) *= std::exp(spec.matrix().col(j).dot(shift));
    const int base = count(ExpSum(spec, c));
    INFO(spec.matrix() << "\nc = " << c.transpose());
    CHECK(count(ExpSum(spec, t * c)) == base);
    CHECK(count(ExpSum(spec, shifted)) == base);
  }
}
