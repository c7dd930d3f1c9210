#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <numbers>

#include "fewnomial/contour.hpp"
#include "fewnomial/errors.hpp"
#include "fewnomial/gale.hpp"
#include "fixtures.hpp"

using namespace fewnomial;

namespace {

GaleSystem hand_system(const Matrix& u, const Matrix& e, const Vector& targets) {
  GaleSystem s;
  s.j = static_cast<int>(e.cols());
  s.m = static_cast<int>(u.rows()) - s.j;
  s.U = u;
  s.E = e;
  s.targets = targets;
  s.sign_forms = u;
  for (int i = 0; i < u.rows(); ++i) s.factor_rows.push_back(i);
  return s;
}

// Intersections of a line with the contour of a two-column basis, per class:
// sign changes of the line equation along xi over each arc of the half
// circle between consecutive hyperplanes. With b = |b| (-sin th, cos th),
// |b . (cos t, sin t)| = |b| |sin(t - th)|, so the distance to an arc end
// can be carried as its own logarithm and the rays are followed out to
// |log distance| = 700.
std::map<std::string, int> swept_intersections(const NullBasis& b, const AffineLine& line) {
  std::vector<std::pair<double, int>> cuts;
  for (int i = 0; i < b.rows(); ++i) {
    if (b.is_zero_row(i)) continue;
    double t = std::atan2(-b.row(i)(0), b.row(i)(1));
    if (t < 0) t += std::numbers::pi;
    if (t >= std::numbers::pi) t -= std::numbers::pi;
    cuts.emplace_back(t, i);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> us;
  for (int s = 0; s <= 4000; ++s) us.push_back(-700.0 + 660.0 * s / 4000);
  for (int s = 1; s < 80000; ++s) us.push_back(-40.0 + 80.0 * s / 80000);
  for (int s = 0; s <= 4000; ++s) us.push_back(40.0 + 660.0 * s / 4000);

  const Vector normal = line.constraints.row(0).tail(2).transpose();
  const double offset = line.constraints(0, 0);
  std::map<std::string, int> out;
  for (std::size_t a = 0; a < cuts.size(); ++a) {
    const auto [lo, lo_row] = cuts[a];
    const auto [hi_raw, hi_row] = cuts[(a + 1) % cuts.size()];
    const double hi = a + 1 < cuts.size() ? hi_raw : hi_raw + std::numbers::pi;
    const double width = hi - lo;
    if (width < 1e-12) continue;
    const Vector mid = Eigen::Vector2d(std::cos(0.5 * (lo + hi)), std::sin(0.5 * (lo + hi)));
    const std::string cls = sign_class(b, mid).str();
    int changes = 0;
    double prev = 0.0;
    for (std::size_t s = 0; s < us.size(); ++s) {
      const double u = us[s];
      // log of the distance to each end; the nearer one is exact
      const double log_lo = std::log(width) - (u > 0 ? std::log1p(std::exp(-u)) : -u + std::log1p(std::exp(u)));
      const double log_hi = std::log(width) - (u < 0 ? std::log1p(std::exp(u)) : u + std::log1p(std::exp(-u)));
      const double t = u < 0 ? lo + std::exp(log_lo) : hi - std::exp(log_hi);
      Vector x = Vector::Zero(2);
      for (int i = 0; i < b.rows(); ++i) {
        if (b.is_zero_row(i)) continue;
        // sin d = d to double precision once d < 1e-8
        auto log_sin_of = [](double log_d) { return log_d < -20 ? log_d : std::log(std::sin(std::exp(log_d))); };
        double log_sin;
        if (i == lo_row) log_sin = log_sin_of(log_lo);
        else if (i == hi_row) log_sin = log_sin_of(log_hi);
        else log_sin = std::log(std::abs(std::sin(t - std::atan2(-b.row(i)(0), b.row(i)(1)))));
        x += (std::log(b.row(i).norm()) + log_sin) * b.row(i).transpose();
      }
      const double f = normal.dot(x) - offset;
      if (s > 0 && (f > 0) != (prev > 0)) ++changes;
      prev = f;
    }
    out[cls] += changes;
  }
  return out;
}

}  // namespace

TEST_CASE("hand-built one-variable systems") {
  Matrix u(2, 2), e(2, 1);
  u << 1, 1, 2, -1;
  e << 1, -1;
  const GaleSolution sol = solve_gale(hand_system(u, e, Vector::Ones(1)));
  REQUIRE(sol.count == 1);
  CHECK(sol.roots.front().y(0) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(sol.roots.front().residual < 1e-9);
  CHECK(sol.per_cell_bound == 2);

  // y (3 - y) / (1 + y) = 1/2 has roots (5 +- sqrt 17) / 4 in 0 < y < 3
  Matrix u2(3, 2), e2(3, 1);
  u2 << 0, 1, 3, -1, 1, 1;
  e2 << 1, 1, -1;
  Vector t2(1);
  t2 << 0.5;
  const GaleSolution two = solve_gale(hand_system(u2, e2, t2));
  REQUIRE(two.count == 2);
  std::vector<double> ys = {two.roots[0].y(0), two.roots[1].y(0)};
  std::sort(ys.begin(), ys.end());
  CHECK(ys[0] == doctest::Approx((5 - std::sqrt(17.0)) / 4).epsilon(1e-10));
  CHECK(ys[1] == doctest::Approx((5 + std::sqrt(17.0)) / 4).epsilon(1e-10));
  CHECK(two.per_cell_bound == 3);
  CHECK(two.within_bound);
  CHECK(count_gale_roots(hand_system(u2, e2, t2)) == 2);
}

TEST_CASE("hand-built two-variable system") {
  // y1 / s = 1, y2 / s = 2 with s = 1 - y1 - y2
  Matrix u(3, 3), e(3, 2);
  u << 0, 1, 0, 0, 0, 1, 1, -1, -1;
  e << 1, 0, 0, 1, -1, -1;
  Vector t(2);
  t << 1, 2;
  const GaleSolution sol = solve_gale(hand_system(u, e, t), 400);
  REQUIRE(sol.count == 1);
  CHECK(sol.roots.front().y(0) == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(sol.roots.front().y(1) == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("three or more variables are unsupported") {
  Matrix u = Matrix::Identity(4, 4);
  Matrix e = Matrix::Ones(4, 3);
  CHECK_THROWS_AS(solve_gale(hand_system(u, e, Vector::Ones(3))), UnsupportedJ);
}

TEST_CASE("affine lines") {
  const AffineLine l = AffineLine::through(Eigen::Vector2d(1, 2), Eigen::Vector2d(3, 0));
  CHECK(l.ambient() == 2);
  CHECK(l.direction.norm() == doctest::Approx(1.0));
  CHECK(std::abs(l.constraints.row(0).tail(2).dot(l.direction)) < 1e-12);
  CHECK(l.constraints.row(0).tail(2).dot(l.point) == doctest::Approx(l.constraints(0, 0)));
  const AffineLine r = AffineLine::random(3, Box::square(4), 5);
  CHECK(r.constraints.rows() == 2);
  CHECK((r.constraints.rightCols(3) * r.direction).norm() < 1e-12);
  const AffineLine r2 = AffineLine::random(3, Box::square(4), 5);
  CHECK(r.point == r2.point);
}

TEST_CASE("line intersections match a dense sweep of the pentagon contour") {
  const Spectrum spec = fixtures::pentagon();
  const NullBasis b = null_basis(spec);
  int compared = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const AffineLine line = AffineLine::random(2, Box::square(4), seed);
    const LineIntersections li = line_intersections(spec, b, std::nullopt, line, false);
    if (li.degenerate) continue;
    std::map<std::string, int> got;
    for (const IntersectionPoint& p : li.points) {
      ++got[p.sigma];
      CHECK(std::abs(line.constraints.row(0).tail(2).dot(p.point) - line.constraints(0, 0)) < 1e-8);
      // recomputing xi from lambda is only well conditioned away from the hyperplanes
      double clearance = 1.0;
      for (int i = 0; i < b.rows(); ++i)
        clearance = std::min(clearance, std::abs(b.row(i).dot(p.lambda)) / (b.row(i).norm() * p.lambda.norm()));
      if (clearance > 1e-6) CHECK((p.point - xi(b, p.lambda)).norm() < 1e-7 * std::max(1.0, p.point.norm()));
    }
    std::map<std::string, int> want = swept_intersections(b, line);
    std::erase_if(want, [](const auto& kv) { return kv.second == 0; });
    auto show = [](const std::map<std::string, int>& m) {
      std::string out;
      for (const auto& [k, v] : m) out += k + ":" + std::to_string(v) + " ";
      return out;
    };
    INFO("seed " << seed << " solver " << show(got) << " sweep " << show(want));
    CHECK(got == want);
    ++compared;
    for (const auto& [cls, n] : got) {
      const LineIntersections one = line_intersections(spec, b, SignVector::parse(cls), line, false);
      CHECK(one.main_count == n);
    }
  }
  CHECK(compared >= 25);
}

TEST_CASE("completed intersections add fiber crossings") {
  const Spectrum spec = fixtures::parallelogram();
  const NullBasis b = null_basis(spec);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const AffineLine line = AffineLine::random(2, Box::square(4), seed);
    const LineIntersections plain = line_intersections(spec, b, std::nullopt, line, false);
    const LineIntersections done = line_intersections(spec, b, std::nullopt, line, true, 4000, FiberSigns::unrestricted);
    CHECK(done.main_count == plain.main_count);
    // two fiber lines in general position with the line
    CHECK(done.face_count == 2);
    for (const IntersectionPoint& p : done.points) {
      CHECK(std::abs(line.constraints.row(0).tail(2).dot(p.point) - line.constraints(0, 0)) < 1e-8);
      if (p.source != "main") CHECK(p.source.rfind("face:", 0) == 0);
    }
  }
}

TEST_CASE("four-term-deficit spectra solve two-variable systems") {
  Matrix a(2, 6);
  a << 0, 1, 0, 2, 1, 0, 0, 0, 1, 1, 2, 3;
  const Spectrum spec(a);
  const NullBasis b = null_basis(spec);
  const AffineLine line = AffineLine::random(3, Box::square(3), 7);
  const GaleSystem sys = build_gale_system(spec, b, line);
  CHECK(sys.j == 2);
  const LineIntersections li = line_intersections(spec, b, std::nullopt, line, false, 400);
  for (const IntersectionPoint& p : li.points) {
    CHECK((line.constraints.rightCols(3) * p.point - line.constraints.col(0)).norm() < 1e-6);
  }
}

TEST_CASE("preconditions") {
  Matrix collinear(2, 5);
  collinear << 0, 1, 2, 3, 4, 0, 1, 2, 3, 4;
  const Spectrum c(collinear);
  CHECK_THROWS_AS(build_gale_system(c, null_basis(c), AffineLine::random(2, Box::square(4), 1)), DefectiveSpectrum);
  const Spectrum p = fixtures::pentagon();
  CHECK_THROWS_AS(line_intersections(p, null_basis(p), SignVector::parse("++"), AffineLine::random(2, Box::square(4), 1), false),
                  InvalidArgument);
}

TEST_CASE("pentagon line sweep respects the signed bound") {
  const Spectrum spec = fixtures::pentagon();
  const NullBasis b = null_basis(spec);
  const LineSweepReport rep = sweep_lines(spec, b, realized_classes(b), 10, 3, false, Box::square(4));
  CHECK(rep.bound == 5);
  CHECK(rep.lines.size() == 10);
  CHECK(rep.pass);
  for (const LineResult& l : rep.lines) CHECK(l.max_count <= 5);
}
