#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fewnomial/chambers.hpp"
#include "fewnomial/contour.hpp"
#include "fewnomial/linalg.hpp"
#include "fewnomial/sign_vector.hpp"
#include "fewnomial/spectrum.hpp"

namespace fewnomial {

/// g(y) = sum_j c_j exp(a_j . y). Throws ZeroCoefficient when some
/// |c_j| <= 1e-300 and InvalidArgument on a length mismatch.
class ExpSum {
 public:
  ExpSum(Spectrum spec, Vector c);

  const Spectrum& spectrum() const { return spec_; }
  const Vector& coefficients() const { return c_; }
  int n() const { return spec_.n(); }

 private:
  Spectrum spec_;
  Vector c_;
};

/// g(y); +-inf when the true value overflows.
double eval(const ExpSum& g, const Vector& y);

/// g(y) = mantissa * exp(shift) with |mantissa| <= sum |c_j|.
std::pair<double, double> eval_scaled(const ExpSum& g, const Vector& y);

struct ComponentCount {
  int count = 0;
  double box_radius = 0.0;
  bool stabilized = false;
  int boundary_touching = 0;
  int resolution = 0;             // raster side at the reported radius (2d)
  std::vector<int> history;       // counts at each radius tried
  std::optional<int> sign_changes;  // Descartes bound (1d)
  std::vector<double> zeros;        // located zeros (1d)
};

/// n = 1: zeros of g, each a component. Brackets sign changes of g and of g'
/// (for tangential zeros) on [-R, R], with R covering every zero.
ComponentCount count_components_1d(const ExpSum& g);

struct Count2dOptions {
  int resolution = 512;  // raster side at radius R0
  double r0 = 4.0;  // minimum starting radius
  int max_resolution = 2048;
  int max_doublings = 6;
};

/// n = 2: marching-squares component count on [-R, R]^2, doubling R (and the
/// raster side, up to max_resolution) until three consecutive radii agree.
/// The first R is r0, raised to twice the tropical vertex radius of log|c|
/// plus a margin, so that far components are not missed.
/// Returns stabilized = false when max_doublings is exhausted.
ComponentCount count_components_2d(const ExpSum& g, const Count2dOptions& options = {});

struct PathStep {
  double t = 0.0;
  Vector c;
  Vector point;  // reduced point
  ComponentCount count;
  bool near_contour = false;  // inside a crossing window
};

struct PathCrossing {
  double t = 0.0;
  Vector point;
  std::string source;
  double cloud_distance = 0.0;  // distance to the sampled completed contour
};

struct PathResult {
  SignVector sigma;
  std::vector<PathStep> steps;
  std::vector<PathCrossing> crossings;
  std::vector<std::string> violations;
  bool pass = true;
};

struct PathOptions {
  Box box = Box::square(4.0);
  int chamber_resolution = 1024;  // sets the crossing window (2 cells)
  SweepOptions sweep;
  Count2dOptions count;
};

/// Walks c(t) = sign * exp((1-t) Log|c_start| + t Log|c_end|), whose reduced
/// image is the straight segment between the two reduced points, counting
/// components at steps+1 equally spaced t. Crossings of the completed signed
/// contour come from exact line intersections and are cross-checked against
/// the sampled contour. Checks dN = 0 between crossings and |dN| <= 1 across
/// one. Throws DegeneratePath when an endpoint lies on the contour or two
/// crossings share one step; NotStabilized when a count does not stabilize.
PathResult path_experiment(const Spectrum& spec, const NullBasis& basis, const Vector& c_start,
                           const Vector& c_end, int steps, const PathOptions& options = {});

/// Coefficient vector with sign pattern `sigma` and reduced point `p`;
/// `alpha` and `shift` move Log|c| inside the kernel of the reduction.
Vector coefficients_for(const Spectrum& spec, const NullBasis& basis, const SignVector& sigma,
                        const Vector& p, double alpha = 0.0, const Vector& shift = Vector());

struct CensusRow {
  std::string sigma;
  int chamber = 0;
  bool inner = false;
  Vector point;
  Vector c;
  int components = 0;
  bool stabilized = true;
};

struct CensusResult {
  std::vector<CensusRow> rows;
  double theorem1 = 0.0;
  double outer_bound = 0.0;
  int max_components = 0;
  int max_outer_components = 0;
  std::vector<std::string> violations;  // inconsistent chambers, bound breaches
  bool pass = true;
};

struct CensusOptions {
  Box box = Box::square(4.0);
  int chamber_resolution = 1024;
  double erosion = 0.08;  // distance kept from the contour, halved in thinner chambers
  SweepOptions sweep;
  Count2dOptions count;
  bool strict = true;  // throw InconsistentChamber on a within-chamber mismatch
  int total_samples = 0;  // when > 0, spread this many samples over all chambers
};

/// Samples coefficient vectors in every (sign class, chamber) pair and counts
/// components. n = 2 and k in {3, 4}. For k = 4, chambers are the classes of
/// sample points joined by segments that miss the completed contour.
CensusResult chamber_census(const Spectrum& spec, const NullBasis& basis, int samples_per_chamber,
                            std::uint64_t seed, const CensusOptions& options = {});

}  // namespace fewnomial
