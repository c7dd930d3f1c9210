#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "fewnomial/chambers.hpp"
#include "fewnomial/errors.hpp"
#include "fewnomial/zeroset.hpp"
#include "fixtures.hpp"

using namespace fewnomial;

namespace {

Spectrum line_spectrum(const std::vector<double>& exps) {
  Matrix a(1, static_cast<Eigen::Index>(exps.size()));
  for (std::size_t j = 0; j < exps.size(); ++j) a(0, static_cast<Eigen::Index>(j)) = exps[j];
  return Spectrum(a);
}

// Coefficients of prod_i (x - r_i) in increasing degree.
Vector expand_roots(const std::vector<double>& roots) {
  std::vector<double> c = {1.0};
  for (double r : roots) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = next;
  }
  return Eigen::Map<Vector>(c.data(), static_cast<Eigen::Index>(c.size()));
}

int sign_changes(const Vector& c) {
  int n = 0;
  for (Eigen::Index i = 1; i < c.size(); ++i) n += (c(i) > 0) != (c(i - 1) > 0);
  return n;
}

// ((X - p)/a)^2 + ((Y - q)/b)^2 - 1 with X = e^x, Y = e^y.
Vector ellipse_coefficients(double p, double q, double a, double b) {
  Vector c(5);
  c << p * p / (a * a) + q * q / (b * b) - 1, -2 * p / (a * a), -2 * q / (b * b), 1 / (a * a), 1 / (b * b);
  return c;
}

}  // namespace

TEST_CASE("exponential sums and evaluation") {
  const Spectrum spec = fixtures::circles();
  Vector c(5);
  c << 3.25, 1, -4, 1, 1;
  const ExpSum g(spec, c);
  CHECK(g.n() == 2);
  const Vector y = Eigen::Vector2d(0.3, -0.2);
  double direct = 0.0;
  for (int j = 0; j < 5; ++j) direct += c(j) * std::exp(spec.matrix().col(j).dot(y));
  CHECK(eval(g, y) == doctest::Approx(direct).epsilon(1e-13));
  const auto [mant, shift] = eval_scaled(g, y);
  CHECK(mant * std::exp(shift) == doctest::Approx(direct).epsilon(1e-13));
  CHECK(std::abs(mant) <= c.cwiseAbs().sum());

  const Vector far = Eigen::Vector2d(800, 0);
  CHECK(std::isinf(eval(g, far)));
  CHECK(std::isfinite(eval_scaled(g, far).second));

  Vector z = c;
  z(2) = 0;
  CHECK_THROWS_AS(ExpSum(spec, z), ZeroCoefficient);
  CHECK_THROWS_AS(ExpSum(spec, Vector::Ones(4)), InvalidArgument);
}

TEST_CASE("one variable: Descartes example") {
  const ExpSum g(line_spectrum({0, 1, 2}), Eigen::Vector3d(2, -3, 1));
  const ComponentCount r = count_components_1d(g);
  CHECK(r.count == 2);
  CHECK(r.stabilized);
  REQUIRE(r.sign_changes);
  CHECK(*r.sign_changes == 2);
  REQUIRE(r.zeros.size() == 2);
  CHECK(r.zeros[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(r.zeros[1] == doctest::Approx(std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("one variable: tangential and irrational exponents") {
  const ComponentCount t = count_components_1d(ExpSum(line_spectrum({0, 1, 2}), Eigen::Vector3d(1, -2, 1)));
  CHECK(t.count == 1);
  REQUIRE(t.zeros.size() == 1);
  CHECK(std::abs(t.zeros[0]) < 1e-6);

  const ComponentCount none = count_components_1d(ExpSum(line_spectrum({0, 1, 2}), Eigen::Vector3d(1, 1, 1)));
  CHECK(none.count == 0);

  // e^(sqrt2 y) = 3
  const ComponentCount irr = count_components_1d(ExpSum(line_spectrum({0, std::sqrt(2.0)}), Eigen::Vector2d(-3, 1)));
  REQUIRE(irr.zeros.size() == 1);
  CHECK(irr.zeros[0] == doctest::Approx(std::log(3.0) / std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("one variable: factor-built sums attain k zeros") {
  Rng rng = make_rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const int k = 1 + trial % 6;
    std::vector<double> logs;
    while (static_cast<int>(logs.size()) < k) {
      const double l = uniform(rng, -3.0, 3.0);
      if (std::all_of(logs.begin(), logs.end(), [&](double o) { return std::abs(o - l) > 0.2; })) logs.push_back(l);
    }
    std::sort(logs.begin(), logs.end());
    std::vector<double> roots;
    for (double l : logs) roots.push_back(std::exp(l));
    std::vector<double> exps;
    for (int j = 0; j <= k; ++j) exps.push_back(j);
    const Vector c = expand_roots(roots);
    const ComponentCount r = count_components_1d(ExpSum(line_spectrum(exps), c));
    CHECK(r.count == k);
    REQUIRE(r.zeros.size() == logs.size());
    for (std::size_t i = 0; i < logs.size(); ++i) CHECK(r.zeros[i] == doctest::Approx(logs[i]).epsilon(1e-7));
    CHECK(*r.sign_changes == sign_changes(c));
  }
}

TEST_CASE("one variable: zeros never exceed sign changes") {
  Rng rng = make_rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = 1 + trial % 6;
    std::vector<double> exps;
    double e = 0.0;
    for (int j = 0; j <= k; ++j) {
      exps.push_back(e);
      e += uniform(rng, 0.3, 2.0);
    }
    Vector c(k + 1);
    for (int j = 0; j <= k; ++j) c(j) = (uniform(rng, 0, 1) < 0.5 ? -1 : 1) * std::exp(uniform(rng, -2, 2));
    const ComponentCount r = count_components_1d(ExpSum(line_spectrum(exps), c));
    CHECK(r.count <= sign_changes(c));
    CHECK(*r.sign_changes == sign_changes(c));
    for (double z : r.zeros) {
      const auto [mant, shift] = eval_scaled(ExpSum(line_spectrum(exps), c), Vector::Constant(1, z));
      CHECK(std::abs(mant) < 1e-6 * c.cwiseAbs().sum());
    }
  }
}

TEST_CASE("two variables: ellipse arcs in the positive quadrant") {
  const Spectrum spec = fixtures::circles();
  struct Case {
    double p, q, a, b;
  };
  std::vector<Case> cases = {{0.866, 0.866, 1, 1}, {2, 2, 1, 1},   {-2, 1, 1, 1},    {0.5, 2, 1, 1},
                             {-0.5, -0.5, 1, 1},   {3, 0.2, 1, 1}, {1.5, 0.7, 2, 0.5}, {0.3, 0.3, 2, 3}};
  Rng rng = make_rng(43);
  while (cases.size() < 20) {
    const Case c{uniform(rng, -1.5, 2.5), uniform(rng, -1.5, 2.5), uniform(rng, 0.5, 2.0), uniform(rng, 0.5, 2.0)};
    // stay clear of tangencies, vanishing coefficients and arcs hugging a corner
    const Vector coef = ellipse_coefficients(c.p, c.q, c.a, c.b);
    if (std::abs(std::abs(c.p / c.a) - 1) < 0.1 || std::abs(std::abs(c.q / c.b) - 1) < 0.1) continue;
    if (coef.cwiseAbs().minCoeff() < 0.1) continue;
    cases.push_back(c);
  }
  for (const Case& c : cases) {
    const int want = oracle::ellipse_arcs_in_quadrant(c.p, c.q, c.a, c.b);
    const ComponentCount r = count_components_2d(ExpSum(spec, ellipse_coefficients(c.p, c.q, c.a, c.b)));
    INFO("p=" << c.p << " q=" << c.q << " a=" << c.a << " b=" << c.b);
    CHECK(r.stabilized);
    CHECK(r.count == want);
  }
  CHECK(oracle::ellipse_arcs_in_quadrant(0.866, 0.866, 1, 1) == 2);
}

TEST_CASE("two variables: the circles pair") {
  const Spectrum spec = fixtures::circles();
  const Vector c1 = read_coefficients(fixtures::data("circles_g1.txt"), 5);
  const Vector c2 = read_coefficients(fixtures::data("circles_g2.txt"), 5);
  const ComponentCount n1 = count_components_2d(ExpSum(spec, c1));
  const ComponentCount n2 = count_components_2d(ExpSum(spec, c2));
  CHECK(n1.count == 1);
  CHECK(n1.stabilized);
  CHECK(n2.count == 0);
  CHECK(n2.stabilized);
  CHECK(n1.history.size() >= 3);
}

TEST_CASE("two variables: too few doublings do not stabilize") {
  const Spectrum spec = fixtures::circles();
  Count2dOptions o;
  o.max_doublings = 1;
  const ComponentCount r = count_components_2d(ExpSum(spec, ellipse_coefficients(0.866, 0.866, 1, 1)), o);
  CHECK_FALSE(r.stabilized);
}

TEST_CASE("coefficients for a reduced point") {
  const Spectrum spec = fixtures::pentagon();
  const NullBasis b = null_basis(spec);
  const SignVector sigma = SignVector::parse("+--++");
  const Vector p = Eigen::Vector2d(0.7, -1.2);
  for (double alpha : {0.0, 1.5}) {
    const Vector c = coefficients_for(spec, b, sigma, p, alpha, Eigen::Vector2d(0.3, -0.4));
    CHECK((reduced_point(b, c) - p).norm() < 1e-10);
    CHECK(SignVector::of(std::span<const double>(c.data(), 5)) == sigma);
  }
}

TEST_CASE("path across the circles contour") {
  const Spectrum spec = fixtures::circles();
  const NullBasis b = null_basis(spec);
  const Vector c1 = read_coefficients(fixtures::data("circles_g1.txt"), 5);
  const Vector c2 = read_coefficients(fixtures::data("circles_g2.txt"), 5);
  const PathResult r = path_experiment(spec, b, c2, c1, 12);
  CHECK(r.pass);
  CHECK(r.steps.size() == 13);
  CHECK(r.steps.front().count.count == 0);
  CHECK(r.steps.back().count.count == 1);
  REQUIRE(r.crossings.size() == 1);
  CHECK(r.crossings.front().t > 0);
  CHECK(r.crossings.front().t < 1);
  CHECK(r.violations.empty());
  // endpoints in the same chamber: no crossing, no change
  const Vector c3 = coefficients_for(spec, b, r.sigma, r.steps.back().point + Vector::Constant(2, 0.05));
  const PathResult same = path_experiment(spec, b, c1, c3, 4);
  CHECK(same.crossings.empty());
  CHECK(same.steps.back().count.count == 1);
}

TEST_CASE("census on the circles spectrum") {
  const Spectrum spec = fixtures::circles();
  const NullBasis b = null_basis(spec);
  CensusOptions o;
  o.strict = false;
  const CensusResult r = chamber_census(spec, b, 1, 9, o);
  CHECK(r.theorem1 == 13);
  CHECK(r.outer_bound == 10);
  CHECK(!r.rows.empty());
  CHECK(r.pass);
  for (const CensusRow& row : r.rows) {
    CHECK(row.stabilized);
    CHECK(row.components <= 13);
    CHECK((reduced_point(b, row.c) - row.point).norm() < 1e-9);
  }
}
