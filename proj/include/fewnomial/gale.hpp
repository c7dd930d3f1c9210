#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fewnomial/bounds.hpp"
#include "fewnomial/chambers.hpp"
#include "fewnomial/linalg.hpp"
#include "fewnomial/random.hpp"
#include "fewnomial/sign_vector.hpp"
#include "fewnomial/spectrum.hpp"

namespace fewnomial {

/// Affine line in R^(k-1) cut out by k-2 equations L[i,1:] . x = L[i,0].
struct AffineLine {
  Matrix constraints;  // (k-2) x k
  Vector point;        // a point on the line
  Vector direction;    // unit direction
  std::uint64_t seed = 0;

  int ambient() const { return static_cast<int>(constraints.cols()) - 1; }

  /// Line through `point` along `direction` (normalized). Needs ambient >= 2.
  static AffineLine through(const Vector& point, const Vector& direction);
  /// Random point of `box` (extended to every coordinate by its radius in
  /// dimension > 2) and random direction.
  static AffineLine random(int ambient, const Box& box, std::uint64_t seed);
};

/// Which connected cells of the complement of the factor hyperplanes are
/// searched for roots.
enum class CellSelection {
  positive,  // Delta = {every factor > 0}
  classes,   // cells whose sign pattern matches a listed class up to negation
  any,
};

/// prod_l |u_{l,0} + u_l . y|^{E[l,i]} = targets[i], i = 1..j.
struct GaleSystem {
  int m = 0;
  int j = 0;
  Matrix U;        // (m+j) x (j+1): rows (u_{l,0}, u_l)
  Matrix E;        // (m+j) x j
  Vector targets;  // j
  std::vector<int> factor_rows;  // original index of each factor

  // Every linear form, including factors dropped for a negligible exponent;
  // they still bound the sign cells.
  Matrix sign_forms;  // N x (j+1)
  CellSelection selection = CellSelection::positive;
  std::vector<SignVector> classes;  // sign patterns over sign_forms
  double condition = 1.0;           // condition number of the basis used
};

/// Builds the system whose roots y give lambda = (y, 1) with xi(lambda) on
/// the line. Requires k >= 3 and d(A) = n (DefectiveSpectrum otherwise).
/// Selection defaults to every cell.
GaleSystem build_gale_system(const Spectrum& spec, const NullBasis& basis, const AffineLine& line);

struct GaleRoot {
  Vector y;
  double residual = 0.0;  // max_i |log(prod_i / target_i)|
  bool degenerate = false;
  std::string cell;  // raw sign pattern of the sign forms at y, "+-" notation
  Vector form_logs;  // log|form_i| for every sign form, accurate near hyperplanes
};

struct GaleSolution {
  std::vector<GaleRoot> roots;
  int count = 0;  // distinct roots
  bool degenerate = false;
  std::map<std::string, int> per_cell;  // roots per sign cell
  double per_cell_bound = 0.0;          // m+1 for j = 1, ceil(S(m,j)) - 1 for j >= 2
  bool within_bound = true;             // every cell respects the bound (degenerate cases exempt)
};

/// j = 1: sign-change bracketing on a log-scaled partition of each selected
/// interval, bisection to 1e-12, duplicates merged at 1e-8. j = 2: tangent-
/// warped grid scan (400^2, scaled by m/4 for m > 4) and damped Newton.
/// Throws UnsupportedJ for j >= 3.
GaleSolution solve_gale(const GaleSystem& sys, int resolution = 4000, std::uint64_t seed = 0);

int count_gale_roots(const GaleSystem& sys, int resolution = 4000, std::uint64_t seed = 0);

struct IntersectionPoint {
  Vector point;
  Vector lambda;
  std::string sigma;
  std::string source;  // "main" or "face:<w>"
};

struct LineIntersections {
  std::vector<IntersectionPoint> points;
  int main_count = 0;
  int face_count = 0;
  bool degenerate = false;
  double condition = 1.0;
};

/// Points where `line` meets the signed contour of `sigma` (every class when
/// nullopt) and, when `completed`, the face fibers. Requires k in {2, 3, 4}.
LineIntersections line_intersections(const Spectrum& spec, const NullBasis& basis,
                                     const std::optional<SignVector>& sigma, const AffineLine& line,
                                     bool completed, int resolution = 4000,
                                     FiberSigns fiber_signs = FiberSigns::projected);

struct LineResult {
  std::uint64_t seed = 0;  // seed of the line actually used
  int redraws = 0;
  std::map<std::string, int> counts;  // per sign class
  int max_count = 0;
  bool pass = true;
};

struct LineSweepReport {
  double bound = 0.0;
  bool completed = false;
  std::vector<LineResult> lines;
  std::vector<std::string> log;  // redraw notes
  bool pass = true;
};

/// Draws `lines` random lines (seed, seed+1, ...) through `box` and counts
/// intersections per class of `classes`. A degenerate solve re-draws with
/// the next unused seed.
LineSweepReport sweep_lines(const Spectrum& spec, const NullBasis& basis,
                            const std::vector<SignVector>& classes, int lines, std::uint64_t seed,
                            bool completed, const Box& box, int resolution = 4000);

}  // namespace fewnomial
