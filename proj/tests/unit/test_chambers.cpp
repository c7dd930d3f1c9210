#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "fewnomial/chambers.hpp"
#include "fewnomial/errors.hpp"
#include "fixtures.hpp"

using namespace fewnomial;

namespace {

ContourCloud planar() {
  ContourCloud c;
  c.dimension = 2;
  return c;
}

void add_polyline(ContourCloud& cloud, const std::vector<Eigen::Vector2d>& pts,
                  std::optional<Eigen::Vector2d> head = std::nullopt,
                  std::optional<Eigen::Vector2d> tail = std::nullopt) {
  Branch br;
  br.first = cloud.samples.size();
  const int id = static_cast<int>(cloud.branches.size());
  for (const auto& p : pts) {
    ContourSample s;
    s.point = p;
    s.sigma = "+";
    s.branch = id;
    cloud.samples.push_back(s);
  }
  br.last = cloud.samples.size() - 1;
  if (head) br.head_ray = Vector(head->normalized());
  if (tail) br.tail_ray = Vector(tail->normalized());
  cloud.branches.push_back(br);
}

// Full line through p along d, drawn as a short segment with two rays.
void add_line(ContourCloud& cloud, const Eigen::Vector2d& p, const Eigen::Vector2d& d) {
  add_polyline(cloud, {p - 0.5 * d, p + 0.5 * d}, -d, d);
}

std::vector<Eigen::Vector2d> circle(double r, int n) {
  std::vector<Eigen::Vector2d> out;
  for (int i = 0; i <= n; ++i) {
    const double t = 2 * std::numbers::pi * i / n;
    out.emplace_back(r * std::cos(t), r * std::sin(t));
  }
  return out;
}

}  // namespace

TEST_CASE("box parsing and geometry") {
  const Box b = Box::parse("-1,2,-3,4");
  CHECK(b.xmin == -1);
  CHECK(b.xmax == 2);
  CHECK(b.ymin == -3);
  CHECK(b.ymax == 4);
  CHECK(b.radius() == doctest::Approx(3.5));
  CHECK(b.contains(0, 0));
  CHECK_FALSE(b.contains(3, 0));
  CHECK_THROWS_AS(Box::parse("1,2,3"), InvalidArgument);
  CHECK_THROWS_AS(Box::parse("a,b,c,d"), InvalidArgument);
  CHECK_THROWS_AS(chambers(planar(), Box{1, 1, 0, 1}, 64), DegenerateBox);
}

TEST_CASE("empty contour leaves one outer chamber") {
  const ChamberMap m = chambers(planar(), Box::square(4), 128);
  CHECK(m.count() == 1);
  CHECK(m.inner_count() == 0);
  CHECK(m.chamber_at(0, 0) == 0);
  CHECK_THROWS_AS(m.cell_of(5, 0), OutsideBox);
}

TEST_CASE("closed curve has one inner chamber") {
  ContourCloud c = planar();
  add_polyline(c, circle(1.5, 200));
  const StableChambers st = stable_chambers(c, Box::square(4), 256);
  CHECK(st.stable);
  CHECK(st.counts == std::vector<int>{2, 2, 2});
  CHECK(st.map.inner_count() == 1);
  const auto in = st.map.chamber_at(0, 0);
  const auto out = st.map.chamber_at(3, 3);
  REQUIRE(in);
  REQUIRE(out);
  CHECK(*in != *out);
  CHECK(st.map.chambers[static_cast<std::size_t>(*in)].inner);
  CHECK_FALSE(st.map.chamber_at(1.5, 0));  // on the curve
}

TEST_CASE("nested curves and a crossing pair of lines") {
  ContourCloud c = planar();
  add_polyline(c, circle(1.0, 200));
  add_polyline(c, circle(2.5, 300));
  CHECK(chambers(c, Box::square(4), 256).count() == 3);
  CHECK(chambers(c, Box::square(4), 256).inner_count() == 2);

  ContourCloud x = planar();
  add_line(x, {0, 0}, {1, 0});
  add_line(x, {0, 0}, {0, 1});
  const ChamberMap m = chambers(x, Box::square(4), 256);
  CHECK(m.count() == 4);
  CHECK(m.inner_count() == 0);
  const auto hits = contour_crossings(x, 100.0);
  REQUIRE(hits.size() == 1);
  CHECK(hits.front().norm() < 1e-12);
}

TEST_CASE("line arrangements follow the Euler count") {
  Rng rng = make_rng(31);
  int done = 0;
  for (int trial = 0; done < 20 && trial < 2000; ++trial) {
    const int m = 2 + done % 4;
    std::vector<Eigen::Vector2d> ps, ds;
    for (int i = 0; i < m; ++i) {
      ps.emplace_back(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
      const double t = std::numbers::pi * (i + uniform(rng, 0.2, 0.8)) / m;
      ds.emplace_back(std::cos(t), std::sin(t));
    }
    // keep arrangements whose cells are comfortably wider than a raster cell
    bool good = true;
    std::vector<Eigen::Vector2d> xs;
    for (int i = 0; i < m && good; ++i)
      for (int j = i + 1; j < m && good; ++j) {
        const double det = ds[i](0) * ds[j](1) - ds[i](1) * ds[j](0);
        if (std::abs(det) < 0.25) good = false;
        else {
          const Eigen::Vector2d r = ps[j] - ps[i];
          const double s = (r(0) * ds[j](1) - r(1) * ds[j](0)) / det;
          xs.push_back(ps[i] + s * ds[i]);
          if (xs.back().cwiseAbs().maxCoeff() > 2.5) good = false;
        }
      }
    for (std::size_t a = 0; a < xs.size() && good; ++a)
      for (std::size_t b = a + 1; b < xs.size() && good; ++b) good = (xs[a] - xs[b]).norm() > 0.4;
    // and no crossing close to a third line
    for (std::size_t a = 0; a < xs.size() && good; ++a)
      for (int i = 0; i < m && good; ++i) {
        const double dist = std::abs((xs[a] - ps[i])(0) * ds[i](1) - (xs[a] - ps[i])(1) * ds[i](0));
        if (dist > 1e-9 && dist < 0.2) good = false;
      }
    if (!good) continue;
    ContourCloud c = planar();
    for (int i = 0; i < m; ++i) add_line(c, ps[i], ds[i]);
    const ChamberMap map = chambers(c, Box::square(4), 512);
    CHECK(map.count() == 1 + m + m * (m - 1) / 2);
    CHECK(map.inner_count() == (m - 1) * (m - 2) / 2);
    CHECK(contour_crossings(c, 100.0).size() == static_cast<std::size_t>(m * (m - 1) / 2));
    ++done;
  }
  CHECK(done == 20);
}

TEST_CASE("crossings outside the padded box are rejected") {
  ContourCloud x = planar();
  add_line(x, {4.5, 0}, {1, 0.3});
  add_line(x, {4.5, 0}, {0, 1});
  CHECK_THROWS_AS(chambers(x, Box::square(4), 128), DegenerateBox);
}

TEST_CASE("non-planar clouds are rejected") {
  ContourCloud c;
  c.dimension = 3;
  ContourSample s;
  s.point = Eigen::Vector3d(0, 0, 0);
  c.samples.push_back(s);
  CHECK_THROWS_AS(chambers(c, Box::square(4), 64), UnsupportedDimension);
}

TEST_CASE("segments include rays") {
  ContourCloud x = planar();
  add_line(x, {0, 0}, {1, 0});
  const auto segs = cloud_segments(x, 10.0);
  REQUIRE(segs.size() == 3);
  CHECK((segs.front().a - Eigen::Vector2d(-10.5, 0)).norm() < 1e-12);
  CHECK((segs.back().b - Eigen::Vector2d(10.5, 0)).norm() < 1e-12);
}

TEST_CASE("reduced points and location") {
  const Spectrum spec = fixtures::circles();
  const NullBasis b = null_basis(spec);
  Vector c(5);
  c << 3.25, 1, -4, 1, 1;
  Vector logs = c.array().abs().log();
  CHECK((reduced_point(b, c) - b.matrix().transpose() * logs).norm() < 1e-12);
  Vector z = c;
  z(1) = 0;
  CHECK_THROWS_AS(reduced_point(b, z), ZeroCoefficient);
  CHECK_THROWS_AS(reduced_point(b, Vector::Ones(3)), InvalidArgument);

  const ChamberMap map = chambers(planar(), Box::square(4), 64);
  const Location loc = locate(spec, b, c, map);
  CHECK(loc.sigma.str() == "++-++");
  CHECK(loc.chamber == 0);
  REQUIRE(reduced_point(b, c).norm() > 1e-2);
  CHECK_THROWS_AS(locate(spec, b, c, chambers(planar(), Box::square(1e-3), 8)), OutsideBox);
}
