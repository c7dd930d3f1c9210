#include "fewnomial/contour.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fewnomial/errors.hpp"
#include "fewnomial/random.hpp"

namespace fewnomial {

namespace {

constexpr double kHitTolerance = 1e-12;
constexpr double kAngleMerge = 1e-12;
constexpr int kMaxRefineDepth = 40;

// Values beta_i . lambda; throws HyperplaneHit on a near-zero nonzero row.
Vector linear_forms(const NullBasis& basis, const Vector& lambda) {
  if (lambda.size() != basis.cols()) {
    throw InvalidArgument("lambda has " + std::to_string(lambda.size()) + " entries, expected " +
                          std::to_string(basis.cols()));
  }
  const Vector values = basis.matrix() * lambda;
  const double lnorm = lambda.norm();
  for (int i = 0; i < basis.rows(); ++i) {
    if (basis.is_zero_row(i)) continue;
    if (std::abs(values(i)) <= kHitTolerance * basis.row(i).norm() * lnorm) {
      throw HyperplaneHit("lambda lies on the hyperplane of row " + std::to_string(i + 1));
    }
  }
  return values;
}

std::vector<std::int8_t> raw_signs(const NullBasis& basis, const Vector& values,
                                   const Vector& lambda, SignReading reading) {
  std::vector<std::int8_t> raw(static_cast<std::size_t>(values.size()), 1);
  const double lnorm = lambda.norm();
  for (int i = 0; i < values.size(); ++i) {
    if (basis.is_zero_row(i)) continue;
    double v = values(i);
    if (reading == SignReading::log_magnitudes) v = std::log(std::abs(v) / lnorm);
    raw[static_cast<std::size_t>(i)] = v < 0 ? -1 : 1;
  }
  return raw;
}

bool outside_tube(const NullBasis& basis, const Vector& lambda, double tube) {
  const Vector values = basis.matrix() * lambda;
  const double lnorm = lambda.norm();
  for (int i = 0; i < basis.rows(); ++i) {
    if (basis.is_zero_row(i)) continue;
    if (std::abs(values(i)) < tube * basis.row(i).norm() * lnorm) return false;
  }
  return true;
}

Vector xi_from_values(const NullBasis& basis, const Vector& values) {
  Vector out = Vector::Zero(basis.cols());
  for (int i = 0; i < basis.rows(); ++i) {
    if (basis.is_zero_row(i)) continue;
    out += std::log(std::abs(values(i))) * basis.row(i).transpose();
  }
  return out;
}

double sweep_phase(std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return uniform(rng, 0.05, 0.95);
}

Vector unit_angle(double theta) {
  Vector v(2);
  v << std::cos(theta), std::sin(theta);
  return v;
}

// Points of the upper unit half sphere, roughly equal-area.
std::vector<Vector> fibonacci_half_sphere(int count, double phase) {
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double z = (i + phase) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i + 2.0 * std::numbers::pi * phase;
    Vector v(3);
    v << r * std::cos(phi), r * std::sin(phi), z;
    out.push_back(v);
  }
  return out;
}

// Hyperplane angles of a two-column basis: the angle of the line
// {lambda : beta_i . lambda = 0} in [0, pi), grouped when they coincide.
struct AngleGroup {
  double angle = 0.0;
  std::vector<int> rows;
};

std::vector<AngleGroup> hyperplane_angles(const NullBasis& basis) {
  std::vector<std::pair<double, int>> raw;
  for (int i = 0; i < basis.rows(); ++i) {
    if (basis.is_zero_row(i)) continue;
    double a = std::atan2(basis.matrix()(i, 1), basis.matrix()(i, 0)) + std::numbers::pi / 2;
    a = std::fmod(a, std::numbers::pi);
    if (a < 0) a += std::numbers::pi;
    raw.emplace_back(a, i);
  }
  std::sort(raw.begin(), raw.end());
  std::vector<AngleGroup> groups;
  for (const auto& [a, i] : raw) {
    if (!groups.empty() && a - groups.back().angle < kAngleMerge) {
      groups.back().rows.push_back(i);
    } else {
      groups.push_back({a, {i}});
    }
  }
  if (groups.size() > 1 && groups.back().angle > std::numbers::pi - kAngleMerge + groups.front().angle) {
    for (int i : groups.back().rows) groups.front().rows.push_back(i);
    groups.pop_back();
  }
  return groups;
}

std::optional<Vector> tail_ray(const NullBasis& basis, const std::vector<int>& rows) {
  Vector dir = Vector::Zero(basis.cols());
  for (int i : rows) dir -= basis.row(i).transpose();
  if (dir.norm() < 1e-9) return std::nullopt;
  return dir.normalized();
}

struct ArcSample {
  double theta = 0.0;
  Vector lambda;
  Vector point;
  std::vector<std::int8_t> raw;
};

class HalfCircleSweep {
 public:
  HalfCircleSweep(const NullBasis& basis, const std::optional<SignVector>& sigma,
                  const SweepOptions& options, ContourCloud& cloud)
      : basis_(basis), sigma_(sigma), options_(options), cloud_(cloud) {}

  void run() {
    const std::vector<AngleGroup> groups = hyperplane_angles(basis_);
    if (groups.empty()) return;
    const int res = std::max(options_.resolution, 1);
    const double phase = sweep_phase(options_.seed);
    const double start = groups.front().angle;
    const std::size_t h = groups.size();
    std::size_t cell = 0;
    std::vector<ArcSample> current;
    auto upper = [&](std::size_t m) {
      return m + 1 < h ? groups[m + 1].angle : start + std::numbers::pi;
    };
    for (int g = 0; g < res; ++g) {
      const double theta = start + std::numbers::pi * (g + phase) / res;
      while (cell + 1 < h && theta >= upper(cell)) {
        flush(current, groups, cell);
        ++cell;
      }
      if (theta <= groups[cell].angle || theta >= upper(cell)) continue;
      auto s = make(theta);
      if (s) current.push_back(std::move(*s));
    }
    flush(current, groups, cell);
  }

 private:
  std::optional<ArcSample> make(double theta) const {
    Vector lambda = unit_angle(theta);
    if (!outside_tube(basis_, lambda, options_.tube)) return std::nullopt;
    const Vector values = basis_.matrix() * lambda;
    ArcSample s;
    s.theta = theta;
    s.point = xi_from_values(basis_, values);
    s.raw = raw_signs(basis_, values, lambda, options_.reading);
    s.lambda = std::move(lambda);
    return s;
  }

  void refine(const ArcSample& a, const ArcSample& b, int depth, std::vector<ArcSample>& out) const {
    if (depth >= kMaxRefineDepth || a.raw != b.raw) return;
    if ((a.point - b.point).norm() <= options_.refine_gap) return;
    if (std::min(a.point.norm(), b.point.norm()) > options_.refine_radius) return;
    auto mid = make(0.5 * (a.theta + b.theta));
    if (!mid) return;
    refine(a, *mid, depth + 1, out);
    out.push_back(*mid);
    refine(*mid, b, depth + 1, out);
  }

  void flush(std::vector<ArcSample>& grid, const std::vector<AngleGroup>& groups, std::size_t cell) {
    if (grid.empty()) return;
    const std::size_t h = groups.size();
    const double lo = groups[cell].angle;
    const double hi = cell + 1 < h ? groups[cell + 1].angle : groups.front().angle + std::numbers::pi;

    // Geometric tails toward both hyperplanes, down to the tube.
    std::vector<ArcSample> head;
    for (double d = 0.5 * (grid.front().theta - lo); d > 0; d *= 0.5) {
      auto s = make(lo + d);
      if (!s) break;
      head.push_back(std::move(*s));
    }
    std::reverse(head.begin(), head.end());
    std::vector<ArcSample> tail;
    for (double d = 0.5 * (hi - grid.back().theta); d > 0; d *= 0.5) {
      auto s = make(hi - d);
      if (!s) break;
      tail.push_back(std::move(*s));
    }
    std::vector<ArcSample> coarse;
    coarse.reserve(head.size() + grid.size() + tail.size());
    for (auto* part : {&head, &grid, &tail}) {
      for (auto& s : *part) coarse.push_back(std::move(s));
    }
    grid.clear();

    std::vector<ArcSample> fine;
    fine.reserve(coarse.size() * 2);
    for (std::size_t i = 0; i < coarse.size(); ++i) {
      if (i > 0) refine(coarse[i - 1], coarse[i], 0, fine);
      fine.push_back(coarse[i]);
    }

    // One branch per maximal run of a single class.
    std::size_t begin = 0;
    while (begin < fine.size()) {
      std::size_t end = begin;
      while (end + 1 < fine.size() && fine[end + 1].raw == fine[begin].raw) ++end;
      const SignVector cls(fine[begin].raw);
      if (!sigma_ || *sigma_ == cls) {
        Branch branch;
        branch.first = cloud_.samples.size();
        const int id = static_cast<int>(cloud_.branches.size());
        for (std::size_t i = begin; i <= end; ++i) {
          ContourSample cs;
          cs.point = fine[i].point;
          cs.lambda = fine[i].lambda;
          cs.sigma = cls.str();
          cs.branch = id;
          cloud_.samples.push_back(std::move(cs));
        }
        branch.last = cloud_.samples.size() - 1;
        if (begin == 0) branch.head_ray = tail_ray(basis_, groups[cell].rows);
        if (end + 1 == fine.size()) branch.tail_ray = tail_ray(basis_, groups[(cell + 1) % h].rows);
        cloud_.branches.push_back(std::move(branch));
      }
      begin = end + 1;
    }
  }

  const NullBasis& basis_;
  const std::optional<SignVector>& sigma_;
  const SweepOptions& options_;
  ContourCloud& cloud_;
};

void sweep_isolated(const NullBasis& basis, const std::vector<Vector>& lambdas,
                    const std::optional<SignVector>& sigma, const SweepOptions& options,
                    ContourCloud& cloud) {
  for (const Vector& lambda : lambdas) {
    if (!outside_tube(basis, lambda, options.tube)) continue;
    const Vector values = basis.matrix() * lambda;
    const SignVector cls(raw_signs(basis, values, lambda, options.reading));
    if (sigma && !(*sigma == cls)) continue;
    ContourSample cs;
    cs.point = xi_from_values(basis, values);
    cs.lambda = lambda;
    cs.sigma = cls.str();
    cloud.samples.push_back(std::move(cs));
  }
}

// Samples of projective space P^(dim-1) used for face-local parameters.
std::vector<Vector> projective_samples(int dim, int resolution, double phase) {
  std::vector<Vector> out;
  if (dim == 1) {
    out.push_back(Vector::Ones(1));
  } else if (dim == 2) {
    for (int g = 0; g < resolution; ++g) out.push_back(unit_angle(std::numbers::pi * (g + phase) / resolution));
  } else if (dim == 3) {
    out = fibonacci_half_sphere(resolution, phase);
  } else {
    throw UnsupportedDimension("face parameter space of dimension " + std::to_string(dim - 1) +
                               " is not supported");
  }
  return out;
}

}  // namespace

Vector xi(const NullBasis& basis, const Vector& lambda) {
  return xi_from_values(basis, linear_forms(basis, lambda));
}

SignVector sign_class(const NullBasis& basis, const Vector& lambda, SignReading reading) {
  const Vector values = linear_forms(basis, lambda);
  return SignVector(raw_signs(basis, values, lambda, reading));
}

std::size_t ContourCloud::main_count() const {
  return static_cast<std::size_t>(
      std::count_if(samples.begin(), samples.end(), [](const ContourSample& s) { return s.face < 0; }));
}

std::size_t ContourCloud::face_count() const { return samples.size() - main_count(); }

std::set<std::string> ContourCloud::main_classes() const {
  std::set<std::string> out;
  for (const ContourSample& s : samples) {
    if (s.face < 0) out.insert(s.sigma);
  }
  return out;
}

ContourCloud sample_contour(const Spectrum& spec, const NullBasis& basis,
                            const std::optional<SignVector>& sigma, const SweepOptions& options) {
  if (basis.rows() != spec.terms()) {
    throw InvalidArgument("basis has " + std::to_string(basis.rows()) + " rows for " +
                          std::to_string(spec.terms()) + " terms");
  }
  if (sigma && sigma->size() != spec.terms()) {
    throw InvalidArgument("sign vector length " + std::to_string(sigma->size()) + " does not match " +
                          std::to_string(spec.terms()) + " terms");
  }
  ContourCloud cloud;
  cloud.dimension = basis.cols();
  cloud.resolution = options.resolution;
  cloud.sigma = sigma;
  const double phase = sweep_phase(options.seed);
  switch (basis.cols()) {
    case 1:
      sweep_isolated(basis, {Vector::Ones(1)}, sigma, options, cloud);
      break;
    case 2:
      HalfCircleSweep(basis, sigma, options, cloud).run();
      break;
    case 3:
      sweep_isolated(basis, fibonacci_half_sphere(options.resolution, phase), sigma, options, cloud);
      break;
    default:
      throw UnsupportedDimension("contour sampling needs 1 to 3 nullspace columns, got " +
                                 std::to_string(basis.cols()));
  }
  return cloud;
}

std::vector<FaceFiber> face_fibers(const Spectrum& spec, const NullBasis& basis) {
  std::vector<FaceFiber> out;
  const std::vector<Face> list = non_simplicial_faces(spec);
  for (std::size_t w = 0; w < list.size(); ++w) {
    FaceFiber fiber;
    fiber.face = static_cast<int>(w);
    fiber.columns = list[w].columns;
    for (int j = 0; j < spec.terms(); ++j) {
      if (!std::binary_search(fiber.columns.begin(), fiber.columns.end(), j)) fiber.complement.push_back(j);
    }
    fiber.face_basis = orthonormal_null_space(lift_columns(spec.columns(fiber.columns)));
    Matrix rest(static_cast<Eigen::Index>(fiber.complement.size()), basis.cols());
    for (std::size_t r = 0; r < fiber.complement.size(); ++r) {
      rest.row(static_cast<Eigen::Index>(r)) = basis.row(fiber.complement[r]);
    }
    // Exactly-zero rows keep the SVD cutoff meaningful.
    if (rest.size() > 0 && rest.cwiseAbs().maxCoeff() < 1e-9) rest.setZero();
    fiber.free_directions = rest.size() > 0 && rest.cwiseAbs().maxCoeff() > 0
                                ? orthonormal_row_space(rest)
                                : Matrix(basis.cols(), 0);
    out.push_back(std::move(fiber));
  }
  return out;
}

ContourCloud completed_contour(const Spectrum& spec, const NullBasis& basis,
                               const std::optional<SignVector>& sigma, const SweepOptions& options) {
  ContourCloud cloud = sample_contour(spec, basis, sigma, options);
  const double phase = sweep_phase(options.seed);
  for (const FaceFiber& fiber : face_fibers(spec, basis)) {
    const NullBasis face(fiber.face_basis);
    const int q = face.cols();
    if (q == 0) continue;
    bool apex = false;
    for (int i = 0; i < face.rows(); ++i) apex = apex || face.is_zero_row(i);
    if (apex) continue;  // log|0| on every parameter: the fiber is empty

    const Matrix& free = fiber.free_directions;
    const int f = static_cast<int>(free.cols());
    const double radius = options.fiber_radius;
    std::vector<Vector> offsets;
    if (f == 0) {
      offsets.push_back(Vector(0));
    } else if (f == 1) {
      const int count = std::max(options.fiber_samples, 2);
      for (int i = 0; i < count; ++i) {
        Vector t(1);
        t << -radius + 2.0 * radius * i / (count - 1);
        offsets.push_back(t);
      }
    } else if (f == 2) {
      const int count = std::max(options.fiber_samples / 5, 2);
      for (int i = 0; i < count; ++i) {
        for (int j = 0; j < count; ++j) {
          Vector t(2);
          t << -radius + 2.0 * radius * i / (count - 1), -radius + 2.0 * radius * j / (count - 1);
          offsets.push_back(t);
        }
      }
    } else {
      offsets.push_back(Vector::Zero(f));
    }
    const bool line = q == 1 && f == 1;
    const int param_res = q == 1 ? 1 : std::max(options.resolution / 10, 16);

    for (const Vector& lp : projective_samples(q, param_res, phase)) {
      if (!outside_tube(face, lp, options.tube)) continue;
      const Vector values = face.matrix() * lp;
      const std::vector<std::int8_t> raw = raw_signs(face, values, lp, options.reading);
      if (sigma && options.fiber_signs == FiberSigns::projected &&
          !sigma->restrict_to(fiber.columns).matches(raw)) {
        continue;
      }
      Vector base = Vector::Zero(basis.cols());
      for (std::size_t l = 0; l < fiber.columns.size(); ++l) {
        base += std::log(std::abs(values(static_cast<Eigen::Index>(l)))) *
                basis.row(fiber.columns[l]).transpose();
      }
      if (f > 0) base -= free * (free.transpose() * base);

      std::string label;
      if (sigma) {
        label = sigma->str();
      } else {
        label.assign(static_cast<std::size_t>(spec.terms()), '*');
        const int flip = raw.front() < 0 ? -1 : 1;
        for (std::size_t l = 0; l < fiber.columns.size(); ++l) {
          label[static_cast<std::size_t>(fiber.columns[l])] = raw[l] * flip > 0 ? '+' : '-';
        }
      }

      Branch branch;
      branch.face = fiber.face;
      branch.first = cloud.samples.size();
      const int id = line ? static_cast<int>(cloud.branches.size()) : -1;
      for (const Vector& t : offsets) {
        ContourSample cs;
        cs.point = f > 0 ? Vector(base + free * t) : base;
        cs.lambda = lp;
        cs.offset = t;
        cs.sigma = label;
        cs.face = fiber.face;
        cs.branch = id;
        cloud.samples.push_back(std::move(cs));
      }
      if (line) {
        branch.last = cloud.samples.size() - 1;
        branch.head_ray = Vector(-free.col(0));
        branch.tail_ray = Vector(free.col(0));
        cloud.branches.push_back(std::move(branch));
      }
    }
  }
  return cloud;
}

std::vector<SignVector> realized_classes(const NullBasis& basis, int samples) {
  std::vector<SignVector> out;
  auto add = [&](const Vector& lambda) {
    const Vector values = basis.matrix() * lambda;
    for (int i = 0; i < basis.rows(); ++i) {
      if (!basis.is_zero_row(i) && std::abs(values(i)) < 1e-12 * basis.row(i).norm()) return;
    }
    out.push_back(SignVector(raw_signs(basis, values, lambda, SignReading::linear_forms)));
  };
  if (basis.cols() == 1) {
    add(Vector::Ones(1));
  } else if (basis.cols() == 2) {
    const std::vector<AngleGroup> groups = hyperplane_angles(basis);
    if (groups.empty()) add(unit_angle(0.3));
    for (std::size_t m = 0; m < groups.size(); ++m) {
      const double hi = m + 1 < groups.size() ? groups[m + 1].angle : groups.front().angle + std::numbers::pi;
      add(unit_angle(0.5 * (groups[m].angle + hi)));
    }
  } else if (basis.cols() == 3) {
    for (const Vector& v : fibonacci_half_sphere(samples, 0.5)) add(v);
  } else {
    throw UnsupportedDimension("class enumeration needs 1 to 3 nullspace columns");
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace fewnomial
