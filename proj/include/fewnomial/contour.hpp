#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fewnomial/linalg.hpp"
#include "fewnomial/sign_vector.hpp"
#include "fewnomial/spectrum.hpp"

namespace fewnomial {

/// How a parameter lambda is assigned its sign class.
enum class SignReading {
  linear_forms,    // signs of beta_i . lambda (projectively well defined)
  log_magnitudes,  // signs of log|beta_i . lambda| with lambda normalized
};

/// Sign condition imposed on face fibers of the completed contour.
enum class FiberSigns {
  projected,     // face signs must match sigma restricted to the face
  unrestricted,  // every fiber is kept
};

/// Reduced contour map: (log|beta_1.lambda|, ..., log|beta_N.lambda|) B.
/// Zero rows of B are skipped. Throws HyperplaneHit when some nonzero row has
/// |beta_i . lambda| <= 1e-12 |beta_i| |lambda|.
Vector xi(const NullBasis& basis, const Vector& lambda);

/// Canonical sign class of lambda. Zero rows of B get sign +1. Throws
/// HyperplaneHit as `xi` does.
SignVector sign_class(const NullBasis& basis, const Vector& lambda,
                      SignReading reading = SignReading::linear_forms);

struct ContourSample {
  Vector point;   // reduced coordinates
  Vector lambda;  // main: lambda on the unit sphere; fiber: face-local lambda
  Vector offset;  // fiber only: coordinates along the free fiber directions
  std::string sigma;  // class label; '*' marks coordinates a fiber leaves free
  int face = -1;      // -1 for the main contour, else index into non_simplicial_faces()
  int branch = -1;    // polyline id, -1 for isolated samples
};

/// Consecutive samples [first, last] joined into a polyline. A ray records
/// the asymptotic direction in which the closure leaves through that end.
struct Branch {
  int face = -1;
  std::size_t first = 0;
  std::size_t last = 0;
  std::optional<Vector> head_ray;
  std::optional<Vector> tail_ray;
};

struct ContourCloud {
  int dimension = 0;
  int resolution = 0;
  std::optional<SignVector> sigma;  // nullopt when all classes are merged
  std::vector<ContourSample> samples;
  std::vector<Branch> branches;

  bool empty() const { return samples.empty(); }
  std::size_t main_count() const;
  std::size_t face_count() const;
  /// Labels of the main-contour samples.
  std::set<std::string> main_classes() const;
};

struct SweepOptions {
  int resolution = 10000;
  std::uint64_t seed = 0;
  SignReading reading = SignReading::linear_forms;
  double tube = 1e-7;           // |beta_i.lambda| < tube |beta_i| is excluded
  double refine_gap = 0.01;     // target spacing between consecutive branch samples
  double refine_radius = 32.0;  // no refinement where both ends lie beyond this norm
  double fiber_radius = 8.0;    // fibers are sampled over [-R, R] along free directions
  FiberSigns fiber_signs = FiberSigns::projected;
  int fiber_samples = 201;      // samples per free fiber direction
};

/// Samples the signed contour for `sigma` (or every class when nullopt) by
/// sweeping lambda over P^(c-1), c = basis.cols() in {1, 2, 3}. For c = 2
/// samples are grouped into branches (one per cell of the arrangement) and
/// refined adaptively; for c = 3 they are isolated points on a Fibonacci
/// half sphere.
ContourCloud sample_contour(const Spectrum& spec, const NullBasis& basis,
                            const std::optional<SignVector>& sigma,
                            const SweepOptions& options = {});

/// `sample_contour` plus the face fibers of every non-simplicial face.
ContourCloud completed_contour(const Spectrum& spec, const NullBasis& basis,
                               const std::optional<SignVector>& sigma,
                               const SweepOptions& options = {});

/// Classes realized by cells of the arrangement {beta_i . lambda = 0}
/// (exact enumeration for c = 2, sampled for c = 3).
std::vector<SignVector> realized_classes(const NullBasis& basis, int samples = 20000);

/// Description of the fiber over one non-simplicial face.
struct FaceFiber {
  int face = -1;
  std::vector<int> columns;     // J
  std::vector<int> complement;  // columns not in J
  Matrix face_basis;            // B^w, r x (r - d_w - 1)
  Matrix free_directions;       // orthonormal basis (columns) of rowspan(B restricted to J^c)
};

std::vector<FaceFiber> face_fibers(const Spectrum& spec, const NullBasis& basis);

}  // namespace fewnomial
