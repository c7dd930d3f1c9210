#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fewnomial/contour.hpp"
#include "fewnomial/linalg.hpp"
#include "fewnomial/sign_vector.hpp"
#include "fewnomial/spectrum.hpp"

namespace fewnomial {

/// Axis-aligned rectangle [xmin, xmax] x [ymin, ymax] in reduced coordinates.
struct Box {
  double xmin = -4.0;
  double xmax = 4.0;
  double ymin = -4.0;
  double ymax = 4.0;

  static Box square(double radius) { return {-radius, radius, -radius, radius}; }
  /// Parses "xmin,xmax,ymin,ymax".
  static Box parse(const std::string& text);

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  bool contains(double x, double y) const { return x >= xmin && x <= xmax && y >= ymin && y <= ymax; }
  /// Half of the longer side.
  double radius() const;
};

struct Chamber {
  int id = 0;
  bool inner = false;
  long cell_count = 0;
};

/// Raster decomposition of a box by a thickened planar contour. Cells are
/// stored row-major (row = y index); blocked cells carry label -1.
struct ChamberMap {
  Box box;
  int resolution = 0;
  std::vector<int> labels;
  std::vector<Chamber> chambers;

  int count() const { return static_cast<int>(chambers.size()); }
  int inner_count() const;
  /// Cell index of (x, y); throws OutsideBox when the point is not in the box.
  std::size_t cell_of(double x, double y) const;
  /// Chamber containing (x, y), or nullopt when its cell is blocked.
  std::optional<int> chamber_at(double x, double y) const;
};

/// Flood-fills the complement of the cloud thickened by 1.5 cells on a
/// `grid_resolution`^2 raster. Branch rays are drawn out past the box.
/// Throws DegenerateBox for a box of non-positive extent or when the
/// crossings of the contour, padded by 10%, are not inside the box;
/// UnsupportedDimension unless the cloud lives in the plane.
ChamberMap chambers(const ContourCloud& cloud, const Box& box, int grid_resolution);

/// Chamber maps at `grid_resolution`, twice and four times that.
struct StableChambers {
  ChamberMap map;           // finest raster
  std::vector<int> counts;  // one per raster, coarse to fine
  std::vector<int> inner_counts;
  bool stable = false;      // all counts and inner counts agree
};

StableChambers stable_chambers(const ContourCloud& cloud, const Box& box, int grid_resolution);

/// Line segments of the cloud's polylines; rays are replaced by segments of
/// length `ray_length`.
struct Segment {
  Eigen::Vector2d a;
  Eigen::Vector2d b;
  int branch = -1;
  std::size_t index = 0;  // position along the branch
};

std::vector<Segment> cloud_segments(const ContourCloud& cloud, double ray_length);

/// Transversal intersection points between non-adjacent segments of the
/// cloud (self-intersections and crossings between branches).
std::vector<Eigen::Vector2d> contour_crossings(const ContourCloud& cloud, double ray_length);

/// sign(c), the reduced point (Log|c|)B and the chamber containing it.
struct Location {
  SignVector sigma;
  Vector point;
  std::optional<int> chamber;
};

/// Throws ZeroCoefficient when some |c_j| <= 1e-300 and OutsideBox when the
/// reduced point leaves the map's box.
Location locate(const Spectrum& spec, const NullBasis& basis, const Vector& c, const ChamberMap& map);

/// Reduced point (Log|c|)B without chamber lookup.
Vector reduced_point(const NullBasis& basis, const Vector& c);

}  // namespace fewnomial
