#include "fewnomial/zeroset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "fewnomial/bounds.hpp"
#include "fewnomial/errors.hpp"
#include "fewnomial/gale.hpp"
#include "fewnomial/random.hpp"

namespace fewnomial {

namespace {

std::string vec_str(const Vector& v) {
  std::ostringstream out;
  out.precision(10);
  out << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) out << (i ? "," : "") << v(i);
  out << ")";
  return out.str();
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::uint32_t> parent_;
};

// ---------------------------------------------------------------------------
// Two-dimensional marching squares.

struct RasterCount {
  int components = 0;
  int boundary = 0;
};

RasterCount raster_count(const ExpSum& g, double radius, int cells) {
  const Matrix& a = g.spectrum().matrix();
  const Vector& c = g.coefficients();
  const int terms = static_cast<int>(a.cols());
  const int nodes = cells + 1;
  std::vector<double> x(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i) x[static_cast<std::size_t>(i)] = -radius + 2.0 * radius * i / cells;

  // Separable factors exp(a_j1 x_i - M1_i) and exp(a_j2 x_l - M2_l).
  std::vector<double> p1(static_cast<std::size_t>(terms) * nodes);
  std::vector<double> p2(static_cast<std::size_t>(terms) * nodes);
  for (int i = 0; i < nodes; ++i) {
    double m1 = -std::numeric_limits<double>::infinity();
    double m2 = m1;
    for (int j = 0; j < terms; ++j) {
      m1 = std::max(m1, a(0, j) * x[static_cast<std::size_t>(i)]);
      m2 = std::max(m2, a(1, j) * x[static_cast<std::size_t>(i)]);
    }
    for (int j = 0; j < terms; ++j) {
      p1[static_cast<std::size_t>(j) * nodes + i] = std::exp(a(0, j) * x[static_cast<std::size_t>(i)] - m1);
      p2[static_cast<std::size_t>(j) * nodes + i] = std::exp(a(1, j) * x[static_cast<std::size_t>(i)] - m2);
    }
  }

  std::vector<std::uint8_t> negative(static_cast<std::size_t>(nodes) * nodes);
  Vector y(2);
  for (int l = 0; l < nodes; ++l) {
    for (int i = 0; i < nodes; ++i) {
      double sum = 0.0;
      double biggest = 0.0;
      for (int j = 0; j < terms; ++j) {
        const double t = c(j) * p1[static_cast<std::size_t>(j) * nodes + i] * p2[static_cast<std::size_t>(j) * nodes + l];
        sum += t;
        biggest = std::max(biggest, std::abs(t));
      }
      if (biggest < 1e-250) {
        y << x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(l)];
        sum = eval_scaled(g, y).first;
      }
      negative[static_cast<std::size_t>(l) * nodes + i] = sum < 0;
    }
  }

  auto sign_at = [&](int i, int l) { return negative[static_cast<std::size_t>(l) * nodes + i]; };
  const std::uint32_t horizontal = static_cast<std::uint32_t>(cells) * nodes;
  auto h_edge = [&](int i, int l) { return static_cast<std::uint32_t>(l) * cells + i; };
  auto v_edge = [&](int i, int l) { return horizontal + static_cast<std::uint32_t>(i) * cells + l; };
  const std::size_t edge_count = 2 * static_cast<std::size_t>(horizontal);
  std::vector<std::uint8_t> crossing(edge_count, 0);
  for (int l = 0; l < nodes; ++l)
    for (int i = 0; i < cells; ++i) crossing[h_edge(i, l)] = sign_at(i, l) != sign_at(i + 1, l);
  for (int i = 0; i < nodes; ++i)
    for (int l = 0; l < cells; ++l) crossing[v_edge(i, l)] = sign_at(i, l) != sign_at(i, l + 1);

  UnionFind uf(edge_count);
  const double h = 2.0 * radius / cells;
  for (int l = 0; l < cells; ++l) {
    for (int i = 0; i < cells; ++i) {
      const std::uint32_t bottom = h_edge(i, l), top = h_edge(i, l + 1);
      const std::uint32_t left = v_edge(i, l), right = v_edge(i + 1, l);
      const int n = crossing[bottom] + crossing[top] + crossing[left] + crossing[right];
      if (n == 2) {
        std::uint32_t pair[2];
        int k = 0;
        for (std::uint32_t e : {bottom, top, left, right}) {
          if (crossing[e]) pair[k++] = e;
        }
        uf.unite(pair[0], pair[1]);
      } else if (n == 4) {
        y << x[static_cast<std::size_t>(i)] + 0.5 * h, x[static_cast<std::size_t>(l)] + 0.5 * h;
        const bool center_negative = eval_scaled(g, y).first < 0;
        if (center_negative == static_cast<bool>(sign_at(i, l))) {
          uf.unite(bottom, right);
          uf.unite(left, top);
        } else {
          uf.unite(bottom, left);
          uf.unite(top, right);
        }
      }
    }
  }

  RasterCount out;
  std::vector<std::uint8_t> root_seen(edge_count, 0);
  std::vector<std::uint8_t> root_boundary(edge_count, 0);
  auto mark_boundary = [&](std::uint32_t e) {
    if (crossing[e]) root_boundary[uf.find(e)] = 1;
  };
  for (int i = 0; i < cells; ++i) {
    mark_boundary(h_edge(i, 0));
    mark_boundary(h_edge(i, cells));
    mark_boundary(v_edge(0, i));
    mark_boundary(v_edge(cells, i));
  }
  for (std::uint32_t e = 0; e < edge_count; ++e) {
    if (!crossing[e]) continue;
    const std::uint32_t r = uf.find(e);
    if (root_seen[r]) continue;
    root_seen[r] = 1;
    ++out.components;
    if (root_boundary[r]) ++out.boundary;
  }
  return out;
}

// Largest norm of a vertex of the tropical curve of max_j (a_j . y + log|c_j|).
// Far from these vertices the zero set follows single edges of the polygon.
double tropical_radius(const ExpSum& g) {
  const Matrix& a = g.spectrum().matrix();
  const Vector logs = g.coefficients().cwiseAbs().array().log().matrix();
  const int terms = static_cast<int>(a.cols());
  double radius = 0.0;
  for (int i = 0; i < terms; ++i) {
    for (int j = i + 1; j < terms; ++j) {
      for (int l = j + 1; l < terms; ++l) {
        Eigen::Matrix2d m;
        m.row(0) = (a.col(i) - a.col(j)).transpose();
        m.row(1) = (a.col(i) - a.col(l)).transpose();
        if (std::abs(m.determinant()) < 1e-12) continue;
        const Eigen::Vector2d y = m.partialPivLu().solve(Eigen::Vector2d(logs(j) - logs(i), logs(l) - logs(i)));
        const double top = a.col(i).dot(y) + logs(i);
        bool vertex = true;
        for (int q = 0; q < terms && vertex; ++q) vertex = a.col(q).dot(y) + logs(q) <= top + 1e-9 * (1 + std::abs(top));
        if (vertex) radius = std::max(radius, y.norm());
      }
    }
  }
  return radius;
}

double segment_distance(const Eigen::Vector2d& p, const Segment& s) {
  const Eigen::Vector2d ab = s.b - s.a;
  const double len2 = ab.squaredNorm();
  const double t = len2 > 0 ? std::clamp((p - s.a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  return (p - (s.a + t * ab)).norm();
}

double cloud_distance(const ContourCloud& cloud, const std::vector<Segment>& segs, const Eigen::Vector2d& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const Segment& s : segs) best = std::min(best, segment_distance(p, s));
  for (const ContourSample& s : cloud.samples) {
    if (s.branch < 0) best = std::min(best, (Eigen::Vector2d(s.point(0), s.point(1)) - p).norm());
  }
  return best;
}

}  // namespace

ExpSum::ExpSum(Spectrum spec, Vector c) : spec_(std::move(spec)), c_(std::move(c)) {
  if (c_.size() != spec_.terms()) {
    throw InvalidArgument("expected " + std::to_string(spec_.terms()) + " coefficients, got " +
                          std::to_string(c_.size()));
  }
  for (Eigen::Index j = 0; j < c_.size(); ++j) {
    if (!(std::abs(c_(j)) > 1e-300)) throw ZeroCoefficient("coefficient " + std::to_string(j + 1) + " is zero");
  }
}

std::pair<double, double> eval_scaled(const ExpSum& g, const Vector& y) {
  const Matrix& a = g.spectrum().matrix();
  if (y.size() != a.rows()) throw InvalidArgument("point dimension does not match the spectrum");
  const Vector e = a.transpose() * y;
  const double shift = e.maxCoeff();
  double sum = 0.0;
  for (Eigen::Index j = 0; j < e.size(); ++j) sum += g.coefficients()(j) * std::exp(e(j) - shift);
  return {sum, shift};
}

double eval(const ExpSum& g, const Vector& y) {
  const auto [mantissa, shift] = eval_scaled(g, y);
  if (mantissa == 0.0) return 0.0;
  return mantissa * std::exp(shift);
}

ComponentCount count_components_1d(const ExpSum& g) {
  if (g.n() != 1) throw UnsupportedDimension("count_components_1d needs n = 1");
  const Matrix& a = g.spectrum().matrix();
  const Vector& c = g.coefficients();
  const int terms = static_cast<int>(a.cols());
  std::vector<int> order(static_cast<std::size_t>(terms));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int p, int q) { return a(0, p) < a(0, q); });

  ComponentCount out;
  int changes = 0;
  for (int t = 1; t < terms; ++t) {
    if ((c(order[static_cast<std::size_t>(t)]) < 0) != (c(order[static_cast<std::size_t>(t - 1)]) < 0)) ++changes;
  }
  out.sign_changes = changes;

  // Beyond R the extreme term outweighs all others together.
  const int lo = order.front();
  const int hi = order.back();
  double radius = 1.0;
  for (int j = 0; j < terms; ++j) {
    if (j != hi) {
      const double yr = std::log((terms - 1) * std::abs(c(j)) / std::abs(c(hi))) / (a(0, hi) - a(0, j));
      radius = std::max(radius, yr);
    }
    if (j != lo) {
      const double yl = std::log((terms - 1) * std::abs(c(j)) / std::abs(c(lo))) / (a(0, j) - a(0, lo));
      radius = std::max(radius, yl);
    }
  }
  radius += 1.0;
  out.box_radius = radius;

  auto f = [&](double y) { return eval_scaled(g, Vector::Constant(1, y)).first; };
  // Derivative in the same scaling as f.
  auto df = [&](double y) {
    const double shift = (a.row(0) * y).maxCoeff();
    double s = 0.0;
    for (int j = 0; j < terms; ++j) s += c(j) * a(0, j) * std::exp(a(0, j) * y - shift);
    return s;
  };
  auto bisect = [](auto&& fn, double lo_y, double hi_y) {
    double flo = fn(lo_y);
    for (int it = 0; it < 200 && hi_y - lo_y > 1e-14 * std::max(1.0, std::abs(lo_y)); ++it) {
      const double mid = 0.5 * (lo_y + hi_y);
      const double fm = fn(mid);
      if (fm == 0.0) return mid;
      if ((fm < 0) == (flo < 0)) {
        lo_y = mid;
        flo = fm;
      } else {
        hi_y = mid;
      }
    }
    return 0.5 * (lo_y + hi_y);
  };

  const int grid = 20000;
  std::vector<double> zeros;
  std::vector<double> critical;
  double prev_y = -radius;
  double prev_f = f(prev_y);
  double prev_d = df(prev_y);
  if (prev_f == 0.0) zeros.push_back(prev_y);
  for (int i = 1; i <= grid; ++i) {
    const double yy = -radius + 2.0 * radius * i / grid;
    const double fy = f(yy);
    const double dy = df(yy);
    if (fy == 0.0) {
      zeros.push_back(yy);
    } else if (prev_f != 0.0 && (fy < 0) != (prev_f < 0)) {
      zeros.push_back(bisect(f, prev_y, yy));
    }
    if (dy != 0.0 && prev_d != 0.0 && (dy < 0) != (prev_d < 0)) critical.push_back(bisect(df, prev_y, yy));
    prev_y = yy;
    prev_f = fy;
    prev_d = dy;
  }
  // Tangential zeros: critical points where g vanishes to working precision.
  for (double yc : critical) {
    const double scale = c.cwiseAbs().sum();
    if (std::abs(f(yc)) > 1e-10 * scale) continue;
    bool known = false;
    for (double z : zeros) known = known || std::abs(z - yc) < 1e-6;
    if (!known) zeros.push_back(yc);
  }
  std::sort(zeros.begin(), zeros.end());
  out.zeros = zeros;
  out.count = static_cast<int>(zeros.size());
  out.history = {out.count};
  out.stabilized = true;
  return out;
}

ComponentCount count_components_2d(const ExpSum& g, const Count2dOptions& options) {
  if (g.n() != 2) throw UnsupportedDimension("count_components_2d needs n = 2");
  if (options.resolution < 4 || options.r0 <= 0) throw InvalidArgument("invalid raster settings");
  ComponentCount out;
  const double margin = 2.0 * std::log(static_cast<double>(g.spectrum().terms()));
  double radius = std::max(options.r0, 2.0 * (tropical_radius(g) + margin));
  int cells = options.resolution;
  for (int d = 0; d <= options.max_doublings; ++d) {
    const RasterCount rc = raster_count(g, radius, cells);
    out.history.push_back(rc.components);
    out.count = rc.components;
    out.boundary_touching = rc.boundary;
    out.box_radius = radius;
    out.resolution = cells;
    const std::size_t h = out.history.size();
    if (h >= 3 && out.history[h - 1] == out.history[h - 2] && out.history[h - 2] == out.history[h - 3]) {
      out.stabilized = true;
      return out;
    }
    radius *= 2.0;
    cells = std::min(cells * 2, std::max(options.max_resolution, options.resolution));
  }
  out.stabilized = false;
  return out;
}

Vector coefficients_for(const Spectrum& spec, const NullBasis& basis, const SignVector& sigma, const Vector& p,
                        double alpha, const Vector& shift) {
  if (sigma.size() != spec.terms()) throw InvalidArgument("sign vector length does not match the spectrum");
  if (p.size() != basis.cols()) throw InvalidArgument("reduced point has the wrong dimension");
  const Matrix bt = basis.matrix().transpose();
  Vector logs = bt.completeOrthogonalDecomposition().solve(p);
  logs.array() += alpha;
  if (shift.size() > 0) logs += spec.matrix().transpose() * shift;
  Vector c(spec.terms());
  for (int j = 0; j < spec.terms(); ++j) c(j) = sigma[j] * std::exp(logs(j));
  return c;
}

PathResult path_experiment(const Spectrum& spec, const NullBasis& basis, const Vector& c_start, const Vector& c_end,
                           int steps, const PathOptions& options) {
  if (spec.n() != 2) throw UnsupportedDimension("path experiments need n = 2");
  if (steps < 1) throw InvalidArgument("a path needs at least one step");
  if (basis.cols() != 2) throw UnsupportedDimension("path experiments need a planar reduced space");
  const ExpSum g0(spec, c_start);
  const ExpSum g1(spec, c_end);
  auto as_span = [](const Vector& v) { return std::span<const double>(v.data(), static_cast<std::size_t>(v.size())); };
  const SignVector sigma = SignVector::of(as_span(c_start));
  if (!(SignVector::of(as_span(c_end)) == sigma)) throw InvalidArgument("path endpoints have different sign classes");

  PathResult result;
  result.sigma = sigma;
  Vector signs(c_start.size());
  for (Eigen::Index j = 0; j < c_start.size(); ++j) signs(j) = c_start(j) < 0 ? -1.0 : 1.0;
  const Vector log_s = c_start.cwiseAbs().array().log().matrix();
  const Vector log_e = c_end.cwiseAbs().array().log().matrix();
  const Vector p_s = reduced_point(basis, c_start);
  const Vector p_e = reduced_point(basis, c_end);
  for (const Vector* p : {&p_s, &p_e}) {
    if (!options.box.contains((*p)(0), (*p)(1))) throw OutsideBox("path endpoint " + vec_str(*p) + " leaves the box");
  }

  const ContourCloud cloud = completed_contour(spec, basis, sigma, options.sweep);
  const double ray_length = 8.0 * options.box.radius() + 1000.0;
  const std::vector<Segment> segs = cloud_segments(cloud, ray_length);
  const double window = 2.0 * options.box.width() / options.chamber_resolution;
  for (const Vector* p : {&p_s, &p_e}) {
    const double d = cloud_distance(cloud, segs, Eigen::Vector2d((*p)(0), (*p)(1)));
    if (d < window) throw DegeneratePath("path endpoint " + vec_str(*p) + " lies on the contour");
  }

  const Vector dir = p_e - p_s;
  const double length = dir.norm();
  if (length > 1e-12) {
    const AffineLine line = AffineLine::through(p_s, dir);
    const LineIntersections hits =
        line_intersections(spec, basis, sigma, line, true, 4000, options.sweep.fiber_signs);
    if (hits.degenerate) throw DegeneratePath("the path meets the contour non-transversally");
    for (const IntersectionPoint& hit : hits.points) {
      const double t = (hit.point - p_s).dot(dir) / (length * length);
      if (t <= 0.0 || t >= 1.0) continue;
      PathCrossing cr;
      cr.t = t;
      cr.point = hit.point;
      cr.source = hit.source;
      cr.cloud_distance = cloud_distance(cloud, segs, Eigen::Vector2d(hit.point(0), hit.point(1)));
      if (cr.cloud_distance > window) {
        result.violations.push_back("crossing at t=" + std::to_string(t) + " is " + std::to_string(cr.cloud_distance) +
                                    " away from the sampled contour");
      }
      result.crossings.push_back(std::move(cr));
    }
    std::sort(result.crossings.begin(), result.crossings.end(),
              [](const PathCrossing& x, const PathCrossing& y) { return x.t < y.t; });
  }

  for (int i = 0; i <= steps; ++i) {
    PathStep step;
    step.t = static_cast<double>(i) / steps;
    const Vector logs = (1.0 - step.t) * log_s + step.t * log_e;
    step.c = signs.cwiseProduct(logs.array().exp().matrix());
    step.point = (1.0 - step.t) * p_s + step.t * p_e;
    step.count = count_components_2d(ExpSum(spec, step.c), options.count);
    if (!step.count.stabilized) {
      throw NotStabilized("component count did not stabilize at t=" + std::to_string(step.t));
    }
    for (const PathCrossing& cr : result.crossings) {
      step.near_contour = step.near_contour || std::abs(cr.t - step.t) * length < window;
    }
    result.steps.push_back(std::move(step));
  }

  for (int i = 0; i < steps; ++i) {
    const double a = result.steps[static_cast<std::size_t>(i)].t;
    const double b = result.steps[static_cast<std::size_t>(i + 1)].t;
    int inside = 0;
    for (const PathCrossing& cr : result.crossings) inside += cr.t >= a && cr.t < b;
    if (inside > 1) {
      throw DegeneratePath("two contour crossings between t=" + std::to_string(a) + " and t=" + std::to_string(b) +
                           "; raise the step count");
    }
    const int dn = result.steps[static_cast<std::size_t>(i + 1)].count.count - result.steps[static_cast<std::size_t>(i)].count.count;
    if (inside == 0 && dn != 0) {
      result.violations.push_back("N changed by " + std::to_string(dn) + " between t=" + std::to_string(a) +
                                  " and t=" + std::to_string(b) + " without a crossing");
    }
    if (inside == 1 && std::abs(dn) > 1) {
      result.violations.push_back("N changed by " + std::to_string(dn) + " across one crossing near t=" +
                                  std::to_string(a));
    }
  }
  result.pass = result.violations.empty();
  return result;
}

namespace {

struct SampleSite {
  int chamber = 0;
  bool inner = false;
  Vector point;
};

// Random points of each chamber whose surrounding disc of radius `erosion`
// stays in the chamber. Thin chambers fall back to halved radii.
std::vector<SampleSite> chamber_sites(const ChamberMap& map, const std::vector<int>& per_chamber, double erosion,
                                      Rng& rng) {
  std::vector<std::vector<std::size_t>> cells(map.chambers.size());
  for (std::size_t idx = 0; idx < map.labels.size(); ++idx) {
    if (map.labels[idx] >= 0) cells[static_cast<std::size_t>(map.labels[idx])].push_back(idx);
  }
  const int res = map.resolution;
  const double hx = map.box.width() / res;
  const double hy = map.box.height() / res;
  auto clear_at = [&](int i, int j, int ch, double radius) {
    const int rx = static_cast<int>(std::ceil(radius / hx));
    const int ry = static_cast<int>(std::ceil(radius / hy));
    for (int dj = -ry; dj <= ry; ++dj) {
      for (int di = -rx; di <= rx; ++di) {
        const int ni = i + di;
        const int nj = j + dj;
        if (ni < 0 || nj < 0 || ni >= res || nj >= res) continue;
        if ((di * hx) * (di * hx) + (dj * hy) * (dj * hy) > radius * radius) continue;
        if (map.labels[static_cast<std::size_t>(nj) * res + ni] != ch) return false;
      }
    }
    return true;
  };
  std::vector<SampleSite> out;
  for (std::size_t ch = 0; ch < cells.size(); ++ch) {
    const auto& list = cells[ch];
    if (list.empty()) continue;
    int wanted = per_chamber[ch];
    double radius = erosion;
    int failures = 0;
    while (wanted > 0) {
      const std::size_t idx = list[std::uniform_int_distribution<std::size_t>(0, list.size() - 1)(rng)];
      const int i = static_cast<int>(idx % res);
      const int j = static_cast<int>(idx / res);
      if (!clear_at(i, j, static_cast<int>(ch), radius)) {
        if (++failures >= 2000) {
          radius = radius > std::min(hx, hy) ? radius / 2 : 0.0;
          failures = 0;
        }
        continue;
      }
      SampleSite site;
      site.chamber = static_cast<int>(ch);
      site.inner = map.chambers[ch].inner;
      site.point = Vector(2);
      site.point << map.box.xmin + (i + uniform(rng, 0.0, 1.0)) * hx, map.box.ymin + (j + uniform(rng, 0.0, 1.0)) * hy;
      out.push_back(std::move(site));
      --wanted;
    }
  }
  return out;
}

}  // namespace

CensusResult chamber_census(const Spectrum& spec, const NullBasis& basis, int samples_per_chamber, std::uint64_t seed,
                            const CensusOptions& options) {
  if (spec.n() != 2) throw UnsupportedDimension("the census needs n = 2");
  if (spec.k() != 3 && spec.k() != 4) throw UnsupportedDimension("the census needs k in {3, 4}");
  CensusResult result;
  result.theorem1 = theorem1_bound(spec.n(), spec.k());
  result.outer_bound = outer_chamber_bound(spec.n(), spec.k());
  Rng rng = make_rng(seed);
  const std::vector<SignVector> classes = realized_classes(basis);

  // (class, chamber) -> first row seen, for the constancy check.
  std::map<std::pair<std::string, int>, std::size_t> first;
  std::vector<std::string> inconsistent;
  auto record = [&](const SignVector& sigma, const SampleSite& site) {
    CensusRow row;
    row.sigma = sigma.str();
    row.chamber = site.chamber;
    row.inner = site.inner;
    row.point = site.point;
    const double alpha = uniform(rng, -1.0, 1.0);
    Vector shift(spec.n());
    for (int i = 0; i < spec.n(); ++i) shift(i) = uniform(rng, -0.5, 0.5);
    row.c = coefficients_for(spec, basis, sigma, site.point, alpha, shift);
    const ComponentCount count = count_components_2d(ExpSum(spec, row.c), options.count);
    row.components = count.count;
    row.stabilized = count.stabilized;
    if (!row.stabilized) result.violations.push_back("count did not stabilize for c = " + vec_str(row.c));
    if (row.components > result.theorem1) {
      result.violations.push_back("N = " + std::to_string(row.components) + " exceeds the component bound for c = " +
                                  vec_str(row.c));
    }
    result.max_components = std::max(result.max_components, row.components);
    if (!row.inner && spec.k() == 3) {
      result.max_outer_components = std::max(result.max_outer_components, row.components);
      if (row.components > result.outer_bound) {
        result.violations.push_back("N = " + std::to_string(row.components) +
                                    " exceeds the outer-chamber bound for c = " + vec_str(row.c));
      }
    }
    const auto key = std::make_pair(row.sigma, row.chamber);
    auto it = first.find(key);
    if (it == first.end()) {
      first.emplace(key, result.rows.size());
    } else if (result.rows[it->second].components != row.components) {
      const CensusRow& w = result.rows[it->second];
      std::ostringstream msg;
      msg << "class " << row.sigma << " chamber " << row.chamber << ": N = " << w.components << " at c = "
          << vec_str(w.c) << " but N = " << row.components << " at c = " << vec_str(row.c);
      inconsistent.push_back(msg.str());
    }
    result.rows.push_back(std::move(row));
  };

  if (spec.k() == 3) {
    std::vector<ChamberMap> maps;
    int total_chambers = 0;
    for (const SignVector& sigma : classes) {
      maps.push_back(chambers(completed_contour(spec, basis, sigma, options.sweep), options.box,
                              options.chamber_resolution));
      total_chambers += maps.back().count();
    }
    int handed = 0;
    for (std::size_t s = 0; s < classes.size(); ++s) {
      std::vector<int> per(maps[s].chambers.size(), samples_per_chamber);
      if (options.total_samples > 0) {
        for (std::size_t ch = 0; ch < per.size(); ++ch, ++handed) {
          per[ch] = options.total_samples / total_chambers + (handed < options.total_samples % total_chambers ? 1 : 0);
        }
      }
      for (const SampleSite& site : chamber_sites(maps[s], per, options.erosion, rng)) record(classes[s], site);
    }
  } else {
    // Three-dimensional reduced space: group random samples by segments that
    // miss the completed contour.
    const double r = options.box.radius();
    for (const SignVector& sigma : classes) {
      const int count = std::max(2, samples_per_chamber);
      std::vector<Vector> pts;
      for (int i = 0; i < count; ++i) {
        Vector p(3);
        for (int d = 0; d < 3; ++d) p(d) = uniform(rng, -r, r);
        pts.push_back(p);
      }
      UnionFind uf(pts.size());
      for (std::size_t a = 0; a < pts.size(); ++a) {
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
          if (uf.find(static_cast<std::uint32_t>(a)) == uf.find(static_cast<std::uint32_t>(b))) continue;
          const Vector dir = pts[b] - pts[a];
          const AffineLine line = AffineLine::through(pts[a], dir);
          const LineIntersections hits = line_intersections(spec, basis, sigma, line, true, 2000);
          bool blocked = hits.degenerate;
          for (const IntersectionPoint& hit : hits.points) {
            const double t = (hit.point - pts[a]).dot(dir) / dir.squaredNorm();
            blocked = blocked || (t > 0.0 && t < 1.0);
          }
          if (!blocked) uf.unite(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
        }
      }
      for (std::size_t a = 0; a < pts.size(); ++a) {
        SampleSite site;
        site.chamber = static_cast<int>(uf.find(static_cast<std::uint32_t>(a)));
        site.inner = false;
        site.point = pts[a];
        record(sigma, site);
      }
    }
  }

  for (const std::string& msg : inconsistent) result.violations.push_back(msg);
  result.pass = result.violations.empty();
  if (!inconsistent.empty() && options.strict) throw InconsistentChamber(inconsistent.front());
  return result;
}

}  // namespace fewnomial
