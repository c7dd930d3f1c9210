#include "fewnomial/chambers.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <unordered_map>

#include "fewnomial/errors.hpp"

namespace fewnomial {

namespace {

constexpr double kThickening = 1.5;  // in grid cells
constexpr double kLongSegment = 1.0;
constexpr double kHashCell = 0.05;
constexpr long kPocketCells = 256;
constexpr int kPocketReach = 32;

using P2 = Eigen::Vector2d;

double cross(const P2& a, const P2& b) { return a.x() * b.y() - a.y() * b.x(); }

std::optional<P2> proper_intersection(const Segment& s, const Segment& t) {
  const P2 r = s.b - s.a;
  const P2 q = t.b - t.a;
  const double denom = cross(r, q);
  // Near-parallel pieces (collinear fiber samples and rays) never cross.
  if (std::abs(denom) <= 1e-9 * r.norm() * q.norm()) return std::nullopt;
  const double u = cross(t.a - s.a, q) / denom;
  const double v = cross(t.a - s.a, r) / denom;
  // Half-open parameters so a crossing at a shared vertex is seen once.
  if (u < 0 || u >= 1 || v < 0 || v >= 1) return std::nullopt;
  return P2(s.a + u * r);
}

bool adjacent(const Segment& s, const Segment& t) {
  if (s.branch < 0 || s.branch != t.branch) return false;
  const std::size_t d = s.index > t.index ? s.index - t.index : t.index - s.index;
  return d <= 1;
}

double point_segment_distance(const P2& p, const P2& a, const P2& b) {
  const P2 ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

// Clips segment [a, b] to the rectangle; false when nothing remains.
bool clip(P2& a, P2& b, double xmin, double xmax, double ymin, double ymax) {
  double t0 = 0.0;
  double t1 = 1.0;
  const P2 d = b - a;
  const double p[4] = {-d.x(), d.x(), -d.y(), d.y()};
  const double q[4] = {a.x() - xmin, xmax - a.x(), a.y() - ymin, ymax - a.y()};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0) return false;
      continue;
    }
    const double r = q[i] / p[i];
    if (p[i] < 0) {
      t0 = std::max(t0, r);
    } else {
      t1 = std::min(t1, r);
    }
    if (t0 > t1) return false;
  }
  const P2 a0 = a;
  a = a0 + t0 * d;
  b = a0 + t1 * d;
  return true;
}

class Raster {
 public:
  Raster(const Box& box, int res)
      : box_(box), res_(res), hx_(box.width() / res), hy_(box.height() / res),
        blocked_(static_cast<std::size_t>(res) * res, 0) {}

  // Grid coordinates: cell (i, j) has its center at (i, j).
  P2 to_grid(const P2& p) const {
    return {(p.x() - box_.xmin) / hx_ - 0.5, (p.y() - box_.ymin) / hy_ - 0.5};
  }

  void block_segment(P2 a, P2 b) {
    const double pad = kThickening + 1.0;
    if (!clip(a, b, -pad, res_ - 1 + pad, -pad, res_ - 1 + pad)) return;
    const double len = (b - a).norm();
    const int steps = std::max(1, static_cast<int>(std::ceil(len / 0.5)));
    for (int s = 0; s <= steps; ++s) {
      const P2 c = a + (b - a) * (static_cast<double>(s) / steps);
      const int i0 = static_cast<int>(std::floor(c.x() - 2.0));
      const int j0 = static_cast<int>(std::floor(c.y() - 2.0));
      for (int j = std::max(j0, 0); j <= std::min(j0 + 5, res_ - 1); ++j) {
        for (int i = std::max(i0, 0); i <= std::min(i0 + 5, res_ - 1); ++i) {
          const std::size_t idx = static_cast<std::size_t>(j) * res_ + i;
          if (blocked_[idx]) continue;
          if (point_segment_distance(P2(i, j), a, b) <= kThickening) blocked_[idx] = 1;
        }
      }
    }
  }

  ChamberMap fill() const {
    ChamberMap map;
    map.box = box_;
    map.resolution = res_;
    map.labels.assign(blocked_.size(), -1);
    std::deque<std::size_t> queue;
    for (std::size_t start = 0; start < blocked_.size(); ++start) {
      if (blocked_[start] || map.labels[start] >= 0) continue;
      Chamber chamber;
      chamber.id = map.count();
      bool touches = false;
      map.labels[start] = chamber.id;
      queue.push_back(start);
      while (!queue.empty()) {
        const std::size_t idx = queue.front();
        queue.pop_front();
        ++chamber.cell_count;
        const int i = static_cast<int>(idx % res_);
        const int j = static_cast<int>(idx / res_);
        if (i == 0 || j == 0 || i == res_ - 1 || j == res_ - 1) touches = true;
        const int di[4] = {1, -1, 0, 0};
        const int dj[4] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
          const int ni = i + di[d];
          const int nj = j + dj[d];
          if (ni < 0 || nj < 0 || ni >= res_ || nj >= res_) continue;
          const std::size_t nidx = static_cast<std::size_t>(nj) * res_ + ni;
          if (blocked_[nidx] || map.labels[nidx] >= 0) continue;
          map.labels[nidx] = chamber.id;
          queue.push_back(nidx);
        }
      }
      chamber.inner = !touches;
      map.chambers.push_back(chamber);
    }
    return map;
  }

 private:
  Box box_;
  int res_;
  double hx_;
  double hy_;
  std::vector<std::uint8_t> blocked_;
};

// Buckets of short segments for "does this short chord touch the contour"
// queries; long segments are always tested.
class SegmentIndex {
 public:
  // Only chords inside `box` are queried, so long segments are clipped to it
  // and bucketed piece by piece.
  SegmentIndex(const std::vector<Segment>& segs, double cell, const Box& box) : segs_(segs), cell_(cell) {
    const double pad = 2 * cell;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      const auto& s = segs[i];
      if ((s.b - s.a).norm() <= 8 * cell) {
        for_cells(s.a, s.b, [&](std::int64_t k) { buckets_[k].push_back(i); });
        continue;
      }
      const P2 d = s.b - s.a;
      double t0 = 0.0, t1 = 1.0;
      const double lo[2] = {box.xmin - pad, box.ymin - pad};
      const double hi[2] = {box.xmax + pad, box.ymax + pad};
      for (int axis = 0; axis < 2 && t0 <= t1; ++axis) {
        const double p0 = s.a(axis), dv = d(axis);
        if (std::abs(dv) < 1e-300) {
          if (p0 < lo[axis] || p0 > hi[axis]) t1 = -1.0;
          continue;
        }
        double ta = (lo[axis] - p0) / dv, tb = (hi[axis] - p0) / dv;
        if (ta > tb) std::swap(ta, tb);
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
      }
      if (t0 > t1) continue;
      const P2 a = s.a + t0 * d;
      const P2 b = s.a + t1 * d;
      const int pieces = std::max(1, static_cast<int>(std::ceil((b - a).norm() / (4 * cell))));
      for (int q = 0; q < pieces; ++q) {
        const P2 pa = a + (b - a) * (static_cast<double>(q) / pieces);
        const P2 pb = a + (b - a) * (static_cast<double>(q + 1) / pieces);
        for_cells(pa, pb, [&](std::int64_t k) {
          auto& bucket = buckets_[k];
          if (bucket.empty() || bucket.back() != i) bucket.push_back(i);
        });
      }
    }
  }

  bool touches(const P2& a, const P2& b) const {
    bool hit = false;
    for_cells(a, b, [&](std::int64_t k) {
      if (hit) return;
      auto it = buckets_.find(k);
      if (it == buckets_.end()) return;
      for (std::size_t i : it->second) {
        if (closed_intersect(a, b, segs_[i].a, segs_[i].b)) {
          hit = true;
          return;
        }
      }
    });
    return hit;
  }

 private:
  template <class F>
  void for_cells(const P2& a, const P2& b, F&& f) const {
    const auto x0 = static_cast<std::int64_t>(std::floor(std::min(a.x(), b.x()) / cell_));
    const auto x1 = static_cast<std::int64_t>(std::floor(std::max(a.x(), b.x()) / cell_));
    const auto y0 = static_cast<std::int64_t>(std::floor(std::min(a.y(), b.y()) / cell_));
    const auto y1 = static_cast<std::int64_t>(std::floor(std::max(a.y(), b.y()) / cell_));
    for (auto gx = x0; gx <= x1; ++gx)
      for (auto gy = y0; gy <= y1; ++gy) f((gx << 32) ^ (gy & 0xffffffff));
  }

  static bool closed_intersect(const P2& p, const P2& p2, const P2& q, const P2& q2) {
    auto orient = [](const P2& a, const P2& b, const P2& c) {
      const double v = cross(b - a, c - a);
      return (v > 0) - (v < 0);
    };
    auto on = [](const P2& a, const P2& b, const P2& c) {
      return std::min(a.x(), b.x()) <= c.x() && c.x() <= std::max(a.x(), b.x()) &&
             std::min(a.y(), b.y()) <= c.y() && c.y() <= std::max(a.y(), b.y());
    };
    const int o1 = orient(p, p2, q), o2 = orient(p, p2, q2), o3 = orient(q, q2, p), o4 = orient(q, q2, p2);
    if (o1 != o2 && o3 != o4) return true;
    return (o1 == 0 && on(p, p2, q)) || (o2 == 0 && on(p, p2, q2)) || (o3 == 0 && on(q, q2, p)) ||
           (o4 == 0 && on(q, q2, p2));
  }

  const std::vector<Segment>& segs_;
  double cell_;
  std::unordered_map<std::int64_t, std::vector<std::size_t>> buckets_;
};

int find_root(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    x = parent[static_cast<std::size_t>(x)];
  }
  return x;
}

// Raster components that see each other across the thickened band through a
// chord missing the contour are one chamber; this removes the pockets that
// 4-connectivity leaves between nearly touching arms.
void merge_visible(ChamberMap& map, const std::vector<Segment>& segs) {
  const int res = map.resolution;
  const double hx = map.box.width() / res;
  const double hy = map.box.height() / res;
  const SegmentIndex index(segs, 2.0 * std::max(hx, hy), map.box);
  auto center = [&](int i, int j) { return P2(map.box.xmin + (i + 0.5) * hx, map.box.ymin + (j + 0.5) * hy); };
  std::vector<int> parent(map.chambers.size());
  for (std::size_t c = 0; c < parent.size(); ++c) parent[c] = static_cast<int>(c);
  std::vector<long> size(map.chambers.size(), 0);
  for (std::size_t c = 0; c < map.chambers.size(); ++c) size[c] = map.chambers[c].cell_count;
  auto try_join = [&](int i, int j, int ni, int nj) {
    if (ni < 0 || nj < 0 || ni >= res || nj >= res) return;
    const int here = map.labels[static_cast<std::size_t>(j) * res + i];
    const int there = map.labels[static_cast<std::size_t>(nj) * res + ni];
    if (there < 0) return;
    const int ra = find_root(parent, here);
    const int rb = find_root(parent, there);
    if (ra == rb) return;
    if (index.touches(center(i, j), center(ni, nj))) return;
    const int lo = std::min(ra, rb);
    parent[static_cast<std::size_t>(std::max(ra, rb))] = lo;
    size[static_cast<std::size_t>(lo)] = size[static_cast<std::size_t>(ra)] + size[static_cast<std::size_t>(rb)];
  };
  const int reach = static_cast<int>(std::ceil(2 * kThickening)) + 1;
  for (int j = 0; j < res; ++j) {
    for (int i = 0; i < res; ++i) {
      const int here = map.labels[static_cast<std::size_t>(j) * res + i];
      if (here < 0) continue;
      // Only cells at the edge of the band start a chord.
      bool edge = false;
      if (i > 0 && map.labels[static_cast<std::size_t>(j) * res + i - 1] < 0) edge = true;
      if (i + 1 < res && map.labels[static_cast<std::size_t>(j) * res + i + 1] < 0) edge = true;
      if (j > 0 && map.labels[static_cast<std::size_t>(j - 1) * res + i] < 0) edge = true;
      if (j + 1 < res && map.labels[static_cast<std::size_t>(j + 1) * res + i] < 0) edge = true;
      if (!edge) continue;
      for (int dj = 0; dj <= reach; ++dj) {
        for (int di = -reach; di <= reach; ++di) {
          if (dj == 0 && di <= 0) continue;
          if (di * di + dj * dj > reach * reach) continue;
          try_join(i, j, i + di, j + dj);
        }
      }
    }
  }
  // Pockets cut off deep inside narrow wedges need longer chords; nearest
  // targets first.
  std::vector<std::pair<int, int>> offsets;
  for (int dj = -kPocketReach; dj <= kPocketReach; ++dj) {
    for (int di = -kPocketReach; di <= kPocketReach; ++di) {
      const int d2 = di * di + dj * dj;
      if (d2 > 0 && d2 <= kPocketReach * kPocketReach) offsets.emplace_back(di, dj);
    }
  }
  std::stable_sort(offsets.begin(), offsets.end(), [](const auto& p, const auto& q) {
    return p.first * p.first + p.second * p.second < q.first * q.first + q.second * q.second;
  });
  for (int j = 0; j < res; ++j) {
    for (int i = 0; i < res; ++i) {
      const int here = map.labels[static_cast<std::size_t>(j) * res + i];
      if (here < 0) continue;
      const int root = find_root(parent, here);
      if (size[static_cast<std::size_t>(root)] > kPocketCells) continue;
      for (const auto& [di, dj] : offsets) {
        try_join(i, j, i + di, j + dj);
        const int now = find_root(parent, here);
        if (now != root || size[static_cast<std::size_t>(now)] > kPocketCells) break;
      }
    }
  }
  std::vector<int> remap(map.chambers.size(), -1);
  std::vector<Chamber> merged;
  for (std::size_t c = 0; c < map.chambers.size(); ++c) {
    const int root = find_root(parent, static_cast<int>(c));
    if (remap[static_cast<std::size_t>(root)] < 0) {
      remap[static_cast<std::size_t>(root)] = static_cast<int>(merged.size());
      Chamber ch;
      ch.id = static_cast<int>(merged.size());
      ch.inner = true;
      merged.push_back(ch);
    }
    Chamber& target = merged[static_cast<std::size_t>(remap[static_cast<std::size_t>(root)])];
    target.cell_count += map.chambers[c].cell_count;
    target.inner = target.inner && map.chambers[c].inner;
    remap[c] = target.id;
  }
  for (int& label : map.labels) {
    if (label >= 0) label = remap[static_cast<std::size_t>(label)];
  }
  map.chambers = std::move(merged);
}

double cloud_extent(const ContourCloud& cloud) {
  double r = 0.0;
  for (const ContourSample& s : cloud.samples) r = std::max(r, s.point.norm());
  return r;
}

void validate_box(const Box& box) {
  if (!(box.width() > 0) || !(box.height() > 0) || !std::isfinite(box.width()) ||
      !std::isfinite(box.height())) {
    throw DegenerateBox("box has non-positive extent");
  }
}

}  // namespace

Box Box::parse(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidArgument("cannot parse box entry '" + item + "'");
    }
  }
  if (values.size() != 4) throw InvalidArgument("box needs four numbers xmin,xmax,ymin,ymax");
  return {values[0], values[1], values[2], values[3]};
}

double Box::radius() const { return 0.5 * std::max(width(), height()); }

int ChamberMap::inner_count() const {
  return static_cast<int>(std::count_if(chambers.begin(), chambers.end(), [](const Chamber& c) { return c.inner; }));
}

std::size_t ChamberMap::cell_of(double x, double y) const {
  if (!box.contains(x, y)) throw OutsideBox("point lies outside the chamber box");
  const int i = std::min(resolution - 1, static_cast<int>((x - box.xmin) / box.width() * resolution));
  const int j = std::min(resolution - 1, static_cast<int>((y - box.ymin) / box.height() * resolution));
  return static_cast<std::size_t>(j) * resolution + i;
}

std::optional<int> ChamberMap::chamber_at(double x, double y) const {
  const int label = labels[cell_of(x, y)];
  if (label < 0) return std::nullopt;
  return label;
}

std::vector<Segment> cloud_segments(const ContourCloud& cloud, double ray_length) {
  std::vector<Segment> out;
  auto at = [&](std::size_t i) { return P2(cloud.samples[i].point(0), cloud.samples[i].point(1)); };
  for (std::size_t b = 0; b < cloud.branches.size(); ++b) {
    const Branch& br = cloud.branches[b];
    const int id = static_cast<int>(b);
    std::size_t pos = 0;
    if (br.head_ray) {
      const P2 dir((*br.head_ray)(0), (*br.head_ray)(1));
      out.push_back({at(br.first) + ray_length * dir, at(br.first), id, pos++});
    }
    for (std::size_t i = br.first; i < br.last; ++i) out.push_back({at(i), at(i + 1), id, pos++});
    if (br.tail_ray) {
      const P2 dir((*br.tail_ray)(0), (*br.tail_ray)(1));
      out.push_back({at(br.last), at(br.last) + ray_length * dir, id, pos++});
    }
  }
  return out;
}

std::vector<Eigen::Vector2d> contour_crossings(const ContourCloud& cloud, double ray_length) {
  if (cloud.dimension != 2) throw UnsupportedDimension("crossings need a planar contour");
  const std::vector<Segment> segs = cloud_segments(cloud, ray_length);
  std::vector<std::size_t> shorts;
  std::vector<std::size_t> longs;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    ((segs[i].b - segs[i].a).norm() > kLongSegment ? longs : shorts).push_back(i);
  }

  std::vector<P2> found;
  auto test = [&](std::size_t i, std::size_t j) {
    if (adjacent(segs[i], segs[j])) return;
    if (auto p = proper_intersection(segs[i], segs[j])) found.push_back(*p);
  };

  // Short segments: hash by covered cells, test pairs sharing a cell once.
  std::unordered_map<std::int64_t, std::vector<std::size_t>> grid;
  auto key = [](std::int64_t gx, std::int64_t gy) { return (gx << 32) ^ (gy & 0xffffffff); };
  for (std::size_t i : shorts) {
    const auto& s = segs[i];
    const auto x0 = static_cast<std::int64_t>(std::floor(std::min(s.a.x(), s.b.x()) / kHashCell));
    const auto x1 = static_cast<std::int64_t>(std::floor(std::max(s.a.x(), s.b.x()) / kHashCell));
    const auto y0 = static_cast<std::int64_t>(std::floor(std::min(s.a.y(), s.b.y()) / kHashCell));
    const auto y1 = static_cast<std::int64_t>(std::floor(std::max(s.a.y(), s.b.y()) / kHashCell));
    for (auto gx = x0; gx <= x1; ++gx)
      for (auto gy = y0; gy <= y1; ++gy) grid[key(gx, gy)].push_back(i);
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& [k, bucket] : grid) {
    for (std::size_t a = 0; a < bucket.size(); ++a)
      for (std::size_t b = a + 1; b < bucket.size(); ++b)
        pairs.emplace_back(std::min(bucket[a], bucket[b]), std::max(bucket[a], bucket[b]));
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  for (const auto& [i, j] : pairs) test(i, j);

  for (std::size_t a = 0; a < longs.size(); ++a) {
    for (std::size_t i : shorts) test(longs[a], i);
    for (std::size_t b = a + 1; b < longs.size(); ++b) test(longs[a], longs[b]);
  }

  std::sort(found.begin(), found.end(), [](const P2& p, const P2& q) {
    return p.x() < q.x() || (p.x() == q.x() && p.y() < q.y());
  });
  std::vector<P2> out;
  for (const P2& p : found) {
    bool dup = false;
    for (const P2& q : out) dup = dup || (p - q).norm() < 1e-9;
    if (!dup) out.push_back(p);
  }
  return out;
}

ChamberMap chambers(const ContourCloud& cloud, const Box& box, int grid_resolution) {
  validate_box(box);
  if (grid_resolution < 2) throw InvalidArgument("grid resolution must be at least 2");
  if (cloud.dimension != 2 && !cloud.empty()) {
    throw UnsupportedDimension("chamber maps need a planar contour, got dimension " +
                               std::to_string(cloud.dimension));
  }
  const double ray_length = 4.0 * (std::hypot(box.width(), box.height()) + cloud_extent(cloud));
  if (!cloud.empty()) {
    const std::vector<P2> hits = contour_crossings(cloud, ray_length);
    if (!hits.empty()) {
      double x0 = hits.front().x(), x1 = x0, y0 = hits.front().y(), y1 = y0;
      for (const P2& p : hits) {
        x0 = std::min(x0, p.x());
        x1 = std::max(x1, p.x());
        y0 = std::min(y0, p.y());
        y1 = std::max(y1, p.y());
      }
      const double px = 0.1 * std::max(x1 - x0, 1e-9);
      const double py = 0.1 * std::max(y1 - y0, 1e-9);
      if (x0 - px < box.xmin || x1 + px > box.xmax || y0 - py < box.ymin || y1 + py > box.ymax) {
        std::ostringstream msg;
        msg << "contour crossings span [" << x0 << ", " << x1 << "] x [" << y0 << ", " << y1
            << "], which the box does not contain with 10% padding";
        throw DegenerateBox(msg.str());
      }
    }
  }

  Raster raster(box, grid_resolution);
  for (const Segment& s : cloud_segments(cloud, ray_length)) {
    raster.block_segment(raster.to_grid(s.a), raster.to_grid(s.b));
  }
  for (const ContourSample& s : cloud.samples) {
    if (s.branch >= 0) continue;
    const P2 g = raster.to_grid(P2(s.point(0), s.point(1)));
    raster.block_segment(g, g);
  }
  ChamberMap map = raster.fill();
  if (map.count() > 1) merge_visible(map, cloud_segments(cloud, ray_length));
  return map;
}

StableChambers stable_chambers(const ContourCloud& cloud, const Box& box, int grid_resolution) {
  StableChambers out;
  for (int factor : {1, 2, 4}) {
    ChamberMap map = chambers(cloud, box, grid_resolution * factor);
    out.counts.push_back(map.count());
    out.inner_counts.push_back(map.inner_count());
    out.map = std::move(map);
  }
  out.stable = std::adjacent_find(out.counts.begin(), out.counts.end(), std::not_equal_to<>()) == out.counts.end() &&
               std::adjacent_find(out.inner_counts.begin(), out.inner_counts.end(), std::not_equal_to<>()) ==
                   out.inner_counts.end();
  return out;
}

Vector reduced_point(const NullBasis& basis, const Vector& c) {
  if (c.size() != basis.rows()) {
    throw InvalidArgument("coefficient vector has " + std::to_string(c.size()) + " entries, expected " +
                          std::to_string(basis.rows()));
  }
  Vector logs(c.size());
  for (Eigen::Index j = 0; j < c.size(); ++j) {
    if (!(std::abs(c(j)) > 1e-300)) throw ZeroCoefficient("coefficient " + std::to_string(j + 1) + " is zero");
    logs(j) = std::log(std::abs(c(j)));
  }
  return basis.matrix().transpose() * logs;
}

Location locate(const Spectrum& spec, const NullBasis& basis, const Vector& c, const ChamberMap& map) {
  if (c.size() != spec.terms()) {
    throw InvalidArgument("coefficient vector has " + std::to_string(c.size()) + " entries for " +
                          std::to_string(spec.terms()) + " terms");
  }
  Location loc;
  loc.point = reduced_point(basis, c);
  loc.sigma = SignVector::of(std::span<const double>(c.data(), static_cast<std::size_t>(c.size())));
  if (loc.point.size() != 2) throw UnsupportedDimension("chamber lookup needs a planar reduced space");
  loc.chamber = map.chamber_at(loc.point(0), loc.point(1));
  return loc;
}

}  // namespace fewnomial
