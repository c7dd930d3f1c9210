#include "fewnomial/gale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fewnomial/contour.hpp"
#include "fewnomial/errors.hpp"

namespace fewnomial {

namespace {

constexpr double kExponentFloor = 1e-12;
constexpr double kBisectionTol = 1e-12;
constexpr double kMergeTol = 1e-8;
constexpr double kJacobianFloor = 1e-8;
constexpr double kBreakMerge = 1e-12;
constexpr double kTauFinite = 700.0;
constexpr double kTauSemi = 60.0;
constexpr double kTauCore = 20.0;

double sigmoid(double t) { return t >= 0 ? 1.0 / (1.0 + std::exp(-t)) : std::exp(t) / (1.0 + std::exp(t)); }

// log(1 + e^t) without overflow.
double softplus(double t) { return t > 0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

bool is_null_form(const Matrix& forms, int i) { return forms.row(i).cwiseAbs().maxCoeff() < 1e-9; }

std::string pattern_string(const std::vector<std::int8_t>& raw) {
  std::string out;
  for (std::int8_t s : raw) out.push_back(s > 0 ? '+' : '-');
  return out;
}

bool cell_selected(const GaleSystem& sys, const std::vector<std::int8_t>& raw) {
  switch (sys.selection) {
    case CellSelection::any:
      return true;
    case CellSelection::positive:
      for (int i : sys.factor_rows) {
        if (raw[static_cast<std::size_t>(i)] < 0) return false;
      }
      return true;
    case CellSelection::classes:
      for (const SignVector& cls : sys.classes) {
        if (cls.matches(raw)) return true;
      }
      return false;
  }
  return false;
}

double per_cell_bound(int m, int j) {
  if (j == 1) return m + 1.0;
  return std::ceil(s_bound(m, j)) - 1.0;
}

// ---------------------------------------------------------------------------
// Univariate systems. Each interval between consecutive breakpoints is
// reparametrized by tau so that the distance to either endpoint is exp of an
// affine-ish function of tau; F(tau) is then Lipschitz with constant
// sum_l |E_l| and roots close to a hyperplane stay resolvable.

struct Piece {
  bool has_lo = false;
  bool has_hi = false;
  double lo = 0.0;
  double hi = 0.0;
  int lo_group = -1;
  int hi_group = -1;

  double tau_min() const { return -kTauFinite; }
  double tau_max() const { return has_lo && has_hi ? kTauFinite : kTauSemi; }
};

struct PieceEval {
  double y = 0.0;
  double dy = 0.0;       // dy/dtau
  double log_lo = 0.0;   // log(y - lo)
  double log_hi = 0.0;   // log(hi - y)
  double dlog_lo = 0.0;  // d/dtau log(y - lo)
  double dlog_hi = 0.0;
};

PieceEval eval_piece(const Piece& p, double tau) {
  PieceEval e;
  if (p.has_lo && p.has_hi) {
    const double w = p.hi - p.lo;
    const double s = sigmoid(tau);
    e.log_lo = std::log(w) - softplus(-tau);
    e.log_hi = std::log(w) - softplus(tau);
    e.y = s < 0.5 ? p.lo + w * s : p.hi - w * sigmoid(-tau);
    e.dy = w * s * (1 - s);
    e.dlog_lo = 1 - s;
    e.dlog_hi = -s;
  } else if (p.has_lo) {
    e.log_lo = tau;
    e.y = p.lo + std::exp(tau);
    e.dy = std::exp(tau);
    e.dlog_lo = 1.0;
  } else {
    e.log_hi = tau;
    e.y = p.hi - std::exp(tau);
    e.dy = -std::exp(tau);
    e.dlog_hi = 1.0;
  }
  return e;
}

class Univariate {
 public:
  explicit Univariate(const GaleSystem& sys) : sys_(sys) {
    const Matrix& forms = sys.sign_forms;
    const int count = static_cast<int>(forms.rows());
    std::vector<std::pair<double, int>> roots;
    for (int i = 0; i < count; ++i) {
      if (is_null_form(forms, i)) continue;
      const double u = forms(i, 1);
      if (std::abs(u) <= 1e-14 * forms.row(i).norm()) continue;
      roots.emplace_back(-forms(i, 0) / u, i);
    }
    std::sort(roots.begin(), roots.end());
    group_of_.assign(static_cast<std::size_t>(count), -1);
    for (const auto& [r, i] : roots) {
      if (breaks_.empty() || r - breaks_.back() > kBreakMerge * std::max(1.0, std::abs(r))) breaks_.push_back(r);
      group_of_[static_cast<std::size_t>(i)] = static_cast<int>(breaks_.size()) - 1;
    }
  }

  GaleSolution solve(int resolution) const {
    GaleSolution out;
    out.per_cell_bound = per_cell_bound(sys_.m, sys_.j);
    const double target_log = sys_.targets(0) > 0 ? std::log(sys_.targets(0)) : std::numeric_limits<double>::quiet_NaN();
    if (breaks_.empty() || std::isnan(target_log)) return out;
    lipschitz_ = sys_.E.col(0).cwiseAbs().sum();
    target_log_ = target_log;

    for (std::size_t p = 0; p <= breaks_.size(); ++p) {
      Piece piece;
      if (p > 0) {
        piece.has_lo = true;
        piece.lo = breaks_[p - 1];
        piece.lo_group = static_cast<int>(p) - 1;
      }
      if (p < breaks_.size()) {
        piece.has_hi = true;
        piece.hi = breaks_[p];
        piece.hi_group = static_cast<int>(p);
      }
      const std::vector<std::int8_t> raw = raw_at(piece, eval_piece(piece, 0.0));
      if (!cell_selected(sys_, raw)) continue;
      solve_piece(piece, raw, resolution, out);
    }
    out.count = static_cast<int>(out.roots.size());
    for (const auto& [cell, n] : out.per_cell) {
      if (n > out.per_cell_bound && !out.degenerate) out.within_bound = false;
    }
    return out;
  }

 private:
  Vector form_logs(const Piece& piece, const PieceEval& e) const {
    const Matrix& forms = sys_.sign_forms;
    Vector logs(forms.rows());
    for (Eigen::Index i = 0; i < forms.rows(); ++i) {
      const int g = group_of_[static_cast<std::size_t>(i)];
      const double u = forms(i, 1);
      if (g >= 0 && g == piece.lo_group) {
        logs(i) = std::log(std::abs(u)) + e.log_lo;
      } else if (g >= 0 && g == piece.hi_group) {
        logs(i) = std::log(std::abs(u)) + e.log_hi;
      } else {
        logs(i) = std::log(std::abs(forms(i, 0) + u * e.y));
      }
    }
    return logs;
  }

  std::vector<std::int8_t> raw_at(const Piece& piece, const PieceEval& e) const {
    (void)piece;
    const Matrix& forms = sys_.sign_forms;
    std::vector<std::int8_t> raw(static_cast<std::size_t>(forms.rows()), 1);
    for (Eigen::Index i = 0; i < forms.rows(); ++i) {
      if (is_null_form(forms, static_cast<int>(i))) continue;
      const int g = group_of_[static_cast<std::size_t>(i)];
      double v = forms(i, 0) + forms(i, 1) * e.y;
      // Near an endpoint the sign follows the side, not the rounded value.
      if (g >= 0 && g == piece.lo_group) v = forms(i, 1);
      if (g >= 0 && g == piece.hi_group) v = -forms(i, 1);
      raw[static_cast<std::size_t>(i)] = v < 0 ? -1 : 1;
    }
    return raw;
  }

  double value(const Piece& piece, double tau) const {
    const PieceEval e = eval_piece(piece, tau);
    double f = -target_log_;
    for (std::size_t l = 0; l < sys_.factor_rows.size(); ++l) {
      const int i = sys_.factor_rows[l];
      const int g = group_of_[static_cast<std::size_t>(i)];
      const double u = sys_.sign_forms(i, 1);
      double lg;
      if (g >= 0 && g == piece.lo_group) {
        lg = std::log(std::abs(u)) + e.log_lo;
      } else if (g >= 0 && g == piece.hi_group) {
        lg = std::log(std::abs(u)) + e.log_hi;
      } else {
        lg = std::log(std::abs(sys_.sign_forms(i, 0) + u * e.y));
      }
      f += sys_.E(static_cast<Eigen::Index>(l), 0) * lg;
    }
    return f;
  }

  double derivative(const Piece& piece, double tau) const {
    const PieceEval e = eval_piece(piece, tau);
    double d = 0.0;
    for (std::size_t l = 0; l < sys_.factor_rows.size(); ++l) {
      const int i = sys_.factor_rows[l];
      const int g = group_of_[static_cast<std::size_t>(i)];
      double dl;
      if (g >= 0 && g == piece.lo_group) {
        dl = e.dlog_lo;
      } else if (g >= 0 && g == piece.hi_group) {
        dl = e.dlog_hi;
      } else {
        dl = sys_.sign_forms(i, 1) * e.dy / (sys_.sign_forms(i, 0) + sys_.sign_forms(i, 1) * e.y);
      }
      d += sys_.E(static_cast<Eigen::Index>(l), 0) * dl;
    }
    return d;
  }

  // Appends tau values of sign changes in (a, b), given F(a), F(b).
  void scan(const Piece& piece, double a, double fa, double b, double fb, int depth, std::vector<double>& taus) const {
    if (fa == 0.0) {
      taus.push_back(a);
      return;
    }
    if ((fa < 0) != (fb < 0)) {
      double lo = a, hi = b, flo = fa;
      for (int it = 0; it < 400 && hi - lo > kBisectionTol * std::max(1.0, std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = value(piece, mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      taus.push_back(0.5 * (lo + hi));
      return;
    }
    // Same sign: a pair of roots fits only if the Lipschitz cone allows it.
    if (depth >= 24 || std::abs(fa) + std::abs(fb) > lipschitz_ * (b - a)) return;
    const double mid = 0.5 * (a + b);
    const double fm = value(piece, mid);
    scan(piece, a, fa, mid, fm, depth + 1, taus);
    scan(piece, mid, fm, b, fb, depth + 1, taus);
  }

  void solve_piece(const Piece& piece, const std::vector<std::int8_t>& raw, int resolution, GaleSolution& out) const {
    std::vector<double> grid;
    const int core = std::max(resolution, 8);
    const int tail = std::max(resolution / 4, 4);
    auto span = [&](double a, double b, int count, bool include_end) {
      for (int i = 0; i < count; ++i) grid.push_back(a + (b - a) * i / count);
      if (include_end) grid.push_back(b);
    };
    span(piece.tau_min(), -kTauCore, tail, false);
    span(-kTauCore, kTauCore, core, false);
    span(kTauCore, piece.tau_max(), tail, true);

    std::vector<double> taus;
    double prev = value(piece, grid.front());
    for (std::size_t g = 1; g < grid.size(); ++g) {
      const double cur = value(piece, grid[g]);
      scan(piece, grid[g - 1], prev, grid[g], cur, 0, taus);
      prev = cur;
    }
    if (prev == 0.0) taus.push_back(grid.back());
    std::sort(taus.begin(), taus.end());

    const std::string cell = pattern_string(raw);
    std::vector<GaleRoot> local;
    for (double tau : taus) {
      const PieceEval e = eval_piece(piece, tau);
      GaleRoot root;
      root.y = Vector::Constant(1, e.y);
      root.residual = std::abs(value(piece, tau));
      root.degenerate = std::abs(derivative(piece, tau)) <= kJacobianFloor;
      root.cell = cell;
      root.form_logs = form_logs(piece, e);
      if (!local.empty()) {
        GaleRoot& last = local.back();
        const double dy = std::abs(last.y(0) - e.y);
        if (dy <= kMergeTol * std::max(1.0, std::abs(e.y))) {
          last.degenerate = true;
          continue;
        }
      }
      local.push_back(std::move(root));
    }
    for (GaleRoot& r : local) {
      out.degenerate = out.degenerate || r.degenerate;
      ++out.per_cell[cell];
      out.roots.push_back(std::move(r));
    }
  }

  const GaleSystem& sys_;
  std::vector<double> breaks_;
  std::vector<int> group_of_;
  mutable double lipschitz_ = 0.0;
  mutable double target_log_ = 0.0;
};

// ---------------------------------------------------------------------------
// Bivariate systems: grid scan in s = (2/pi) atan(y), Newton inside a cell.

class Bivariate {
 public:
  explicit Bivariate(const GaleSystem& sys) : sys_(sys) {
    log_targets_ = Eigen::Vector2d(std::log(sys.targets(0)), std::log(sys.targets(1)));
  }

  GaleSolution solve(std::uint64_t seed) const {
    GaleSolution out;
    out.per_cell_bound = per_cell_bound(sys_.m, sys_.j);
    if (!(sys_.targets(0) > 0) || !(sys_.targets(1) > 0)) return out;
    const int n = sys_.m > 4 ? 100 * sys_.m : 400;
    const double phase = 0.5 + 0.25 * std::sin(static_cast<double>(seed % 1000));
    auto coord = [&](int i) { return -1.0 + 2.0 * (i + phase) / (n + 1); };
    auto to_y = [](double s) { return std::tan(0.5 * std::numbers::pi * s); };

    const std::size_t side = static_cast<std::size_t>(n);
    std::vector<Eigen::Vector2d> f(side * side);
    std::vector<int> cell(side * side, -1);
    std::map<std::string, int> ids;
    std::vector<std::string> names;
    std::vector<bool> selected;
    for (int b = 0; b < n; ++b) {
      for (int a = 0; a < n; ++a) {
        const Eigen::Vector2d y(to_y(coord(a)), to_y(coord(b)));
        const std::size_t idx = static_cast<std::size_t>(b) * side + a;
        std::vector<std::int8_t> raw;
        if (!pattern(y, raw)) continue;
        const std::string name = pattern_string(raw);
        auto it = ids.find(name);
        if (it == ids.end()) {
          it = ids.emplace(name, static_cast<int>(names.size())).first;
          names.push_back(name);
          selected.push_back(cell_selected(sys_, raw));
        }
        cell[idx] = it->second;
        if (selected[static_cast<std::size_t>(it->second)]) f[idx] = residual(y);
      }
    }

    const double ds = 2.0 / (n + 1);
    std::vector<GaleRoot> found;
    for (int b = 0; b + 1 < n; ++b) {
      for (int a = 0; a + 1 < n; ++a) {
        const std::size_t i00 = static_cast<std::size_t>(b) * side + a;
        const std::size_t corners[4] = {i00, i00 + 1, i00 + side, i00 + side + 1};
        const int c0 = cell[i00];
        if (c0 < 0 || !selected[static_cast<std::size_t>(c0)]) continue;
        bool same = true;
        for (std::size_t q : corners) same = same && cell[q] == c0;
        if (!same) continue;
        bool change = true;
        for (int comp = 0; comp < 2; ++comp) {
          double lo = std::numeric_limits<double>::infinity();
          double hi = -lo;
          for (std::size_t q : corners) {
            lo = std::min(lo, f[q](comp));
            hi = std::max(hi, f[q](comp));
          }
          change = change && lo <= 0 && hi >= 0;
        }
        if (!change) continue;
        const double sa = coord(a) + 0.5 * ds;
        const double sb = coord(b) + 0.5 * ds;
        auto root = newton(Eigen::Vector2d(to_y(sa), to_y(sb)), names[static_cast<std::size_t>(c0)]);
        if (!root) continue;
        const double ra = 2.0 / std::numbers::pi * std::atan(root->y(0));
        const double rb = 2.0 / std::numbers::pi * std::atan(root->y(1));
        if (std::abs(ra - sa) > 1.5 * ds || std::abs(rb - sb) > 1.5 * ds) continue;
        bool dup = false;
        for (const GaleRoot& r : found) {
          dup = dup || (r.y - root->y).norm() <= kMergeTol * std::max(1.0, root->y.norm());
        }
        if (!dup) found.push_back(std::move(*root));
      }
    }
    for (GaleRoot& r : found) {
      out.degenerate = out.degenerate || r.degenerate;
      ++out.per_cell[r.cell];
      out.roots.push_back(std::move(r));
    }
    out.count = static_cast<int>(out.roots.size());
    for (const auto& [c, k] : out.per_cell) {
      if (k > out.per_cell_bound && !out.degenerate) out.within_bound = false;
    }
    return out;
  }

 private:
  double form(int i, const Eigen::Vector2d& y) const {
    return sys_.sign_forms(i, 0) + sys_.sign_forms(i, 1) * y(0) + sys_.sign_forms(i, 2) * y(1);
  }

  bool pattern(const Eigen::Vector2d& y, std::vector<std::int8_t>& raw) const {
    const Matrix& forms = sys_.sign_forms;
    raw.assign(static_cast<std::size_t>(forms.rows()), 1);
    const double scale = 1.0 + y.norm();
    for (int i = 0; i < forms.rows(); ++i) {
      if (is_null_form(forms, i)) continue;
      const double v = form(i, y);
      if (std::abs(v) <= 1e-14 * forms.row(i).norm() * scale || !std::isfinite(v)) return false;
      raw[static_cast<std::size_t>(i)] = v < 0 ? -1 : 1;
    }
    return true;
  }

  Eigen::Vector2d residual(const Eigen::Vector2d& y) const {
    Eigen::Vector2d r = -log_targets_;
    for (std::size_t l = 0; l < sys_.factor_rows.size(); ++l) {
      const double lg = std::log(std::abs(form(sys_.factor_rows[l], y)));
      r += lg * sys_.E.row(static_cast<Eigen::Index>(l)).transpose();
    }
    return r;
  }

  Eigen::Matrix2d jacobian(const Eigen::Vector2d& y) const {
    Eigen::Matrix2d jac = Eigen::Matrix2d::Zero();
    for (std::size_t l = 0; l < sys_.factor_rows.size(); ++l) {
      const int i = sys_.factor_rows[l];
      const double v = form(i, y);
      const Eigen::Vector2d grad(sys_.sign_forms(i, 1) / v, sys_.sign_forms(i, 2) / v);
      jac += sys_.E.row(static_cast<Eigen::Index>(l)).transpose() * grad.transpose();
    }
    return jac;
  }

  std::optional<GaleRoot> newton(Eigen::Vector2d y, const std::string& cell) const {
    Eigen::Vector2d r = residual(y);
    std::vector<std::int8_t> raw;
    for (int it = 0; it < 80 && r.lpNorm<Eigen::Infinity>() > 1e-13; ++it) {
      const Eigen::Matrix2d jac = jacobian(y);
      if (std::abs(jac.determinant()) < 1e-300) return std::nullopt;
      const Eigen::Vector2d step = -jac.partialPivLu().solve(r);
      double alpha = 1.0;
      bool moved = false;
      for (int h = 0; h < 40; ++h, alpha *= 0.5) {
        const Eigen::Vector2d trial = y + alpha * step;
        if (!pattern(trial, raw) || pattern_string(raw) != cell) continue;
        const Eigen::Vector2d rt = residual(trial);
        if (rt.lpNorm<Eigen::Infinity>() < r.lpNorm<Eigen::Infinity>()) {
          y = trial;
          r = rt;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    if (r.lpNorm<Eigen::Infinity>() > 1e-10) return std::nullopt;
    GaleRoot root;
    root.y = y;
    root.residual = r.lpNorm<Eigen::Infinity>();
    root.degenerate = std::abs(jacobian(y).determinant()) <= kJacobianFloor;
    root.cell = cell;
    root.form_logs.resize(sys_.sign_forms.rows());
    for (int i = 0; i < sys_.sign_forms.rows(); ++i) root.form_logs(i) = std::log(std::abs(form(i, y)));
    return root;
  }

  const GaleSystem& sys_;
  Eigen::Vector2d log_targets_;
};

// Gale system for prod_l |forms_l . (y, 1)|^{E_l} = targets.
GaleSystem make_system(const Matrix& homogeneous_forms, const Matrix& exponents, const Vector& log_targets) {
  const int q = static_cast<int>(homogeneous_forms.cols());
  const int j = q - 1;
  GaleSystem sys;
  sys.j = j;
  sys.sign_forms.resize(homogeneous_forms.rows(), q);
  sys.sign_forms.col(0) = homogeneous_forms.col(q - 1);
  if (j > 0) sys.sign_forms.rightCols(j) = homogeneous_forms.leftCols(j);
  for (int i = 0; i < homogeneous_forms.rows(); ++i) {
    if (homogeneous_forms.row(i).cwiseAbs().maxCoeff() < 1e-9) continue;
    if (exponents.row(i).cwiseAbs().maxCoeff() < kExponentFloor) continue;
    sys.factor_rows.push_back(i);
  }
  const int factors = static_cast<int>(sys.factor_rows.size());
  sys.m = factors - j;
  sys.U.resize(factors, q);
  sys.E.resize(factors, j);
  for (int l = 0; l < factors; ++l) {
    sys.U.row(l) = sys.sign_forms.row(sys.factor_rows[static_cast<std::size_t>(l)]);
    sys.E.row(l) = exponents.row(sys.factor_rows[static_cast<std::size_t>(l)]);
  }
  sys.targets = log_targets.array().exp().matrix();
  sys.selection = CellSelection::any;
  return sys;
}

Vector xi_from_logs(const Matrix& rows, const Vector& logs, const std::vector<int>& which) {
  Vector out = Vector::Zero(rows.cols());
  for (std::size_t l = 0; l < which.size(); ++l) {
    const RowVector r = rows.row(which[l]);
    if (r.cwiseAbs().maxCoeff() < 1e-9) continue;
    out += logs(static_cast<Eigen::Index>(l)) * r.transpose();
  }
  return out;
}

std::string face_label(const std::optional<SignVector>& sigma, int terms, const std::vector<int>& columns,
                       const std::string& raw) {
  if (sigma) return sigma->str();
  std::string label(static_cast<std::size_t>(terms), '*');
  const bool flip = !raw.empty() && raw.front() == '-';
  for (std::size_t l = 0; l < columns.size(); ++l) {
    const bool plus = (raw[l] == '+') != flip;
    label[static_cast<std::size_t>(columns[l])] = plus ? '+' : '-';
  }
  return label;
}

}  // namespace

AffineLine AffineLine::through(const Vector& point, const Vector& direction) {
  if (point.size() != direction.size() || point.size() < 1) {
    throw InvalidArgument("line point and direction must share a positive dimension");
  }
  if (direction.norm() < 1e-12) throw InvalidArgument("line direction is zero");
  AffineLine line;
  line.point = point;
  line.direction = direction.normalized();
  const Matrix normals = orthonormal_null_space(line.direction.transpose());
  line.constraints.resize(normals.cols(), point.size() + 1);
  for (Eigen::Index i = 0; i < normals.cols(); ++i) {
    line.constraints(i, 0) = normals.col(i).dot(point);
    line.constraints.row(i).tail(point.size()) = normals.col(i).transpose();
  }
  return line;
}

AffineLine AffineLine::random(int ambient, const Box& box, std::uint64_t seed) {
  if (ambient < 1) throw InvalidArgument("line ambient dimension must be positive");
  Rng rng = make_rng(seed);
  Vector p(ambient);
  for (int i = 0; i < ambient; ++i) {
    if (i == 0) {
      p(i) = uniform(rng, box.xmin, box.xmax);
    } else if (i == 1) {
      p(i) = uniform(rng, box.ymin, box.ymax);
    } else {
      p(i) = uniform(rng, -box.radius(), box.radius());
    }
  }
  AffineLine line = through(p, random_unit_vector(rng, ambient));
  line.seed = seed;
  return line;
}

GaleSystem build_gale_system(const Spectrum& spec, const NullBasis& basis, const AffineLine& line) {
  if (spec.k() < 3) throw InvalidArgument("Gale systems need k >= 3");
  if (affine_dim(spec) != spec.n()) throw DefectiveSpectrum("the spectrum does not span an n-dimensional affine space");
  const int c = basis.cols();
  if (line.constraints.rows() != c - 1 || line.constraints.cols() != c + 1) {
    throw InvalidArgument("line constraints must be " + std::to_string(c - 1) + " x " + std::to_string(c + 1));
  }
  const Matrix slopes = line.constraints.rightCols(c);
  const Matrix exponents = basis.matrix() * slopes.transpose();
  GaleSystem sys = make_system(basis.matrix(), exponents, line.constraints.col(0));
  sys.condition = condition_number(basis.matrix());
  return sys;
}

GaleSolution solve_gale(const GaleSystem& sys, int resolution, std::uint64_t seed) {
  if (sys.j == 1) return Univariate(sys).solve(resolution);
  if (sys.j == 2) return Bivariate(sys).solve(seed);
  throw UnsupportedJ("Gale systems are solved for j in {1, 2}, got j = " + std::to_string(sys.j));
}

int count_gale_roots(const GaleSystem& sys, int resolution, std::uint64_t seed) {
  return solve_gale(sys, resolution, seed).count;
}

LineIntersections line_intersections(const Spectrum& spec, const NullBasis& basis,
                                     const std::optional<SignVector>& sigma, const AffineLine& line,
                                     bool completed, int resolution, FiberSigns fiber_signs) {
  const int k = spec.k();
  if (k < 2 || k > 4) throw UnsupportedDimension("line intersections need k in {2, 3, 4}");
  if (affine_dim(spec) != spec.n()) throw DefectiveSpectrum("the spectrum does not span an n-dimensional affine space");
  if (sigma && sigma->size() != spec.terms()) throw InvalidArgument("sign vector length does not match the spectrum");
  LineIntersections out;
  out.condition = condition_number(basis.matrix());

  if (k == 2) {
    // The contour is one point, met by the only "line" of R^1.
    const Vector lambda = Vector::Ones(1);
    const SignVector cls = sign_class(basis, lambda);
    if (!sigma || *sigma == cls) {
      out.points.push_back({xi(basis, lambda), lambda, cls.str(), "main"});
      out.main_count = 1;
    }
    return out;
  }

  GaleSystem sys = build_gale_system(spec, basis, line);
  if (sigma) {
    sys.selection = CellSelection::classes;
    sys.classes = {*sigma};
  }
  const GaleSolution sol = solve_gale(sys, resolution, line.seed);
  out.degenerate = sol.degenerate;
  std::vector<int> all_rows(static_cast<std::size_t>(spec.terms()));
  for (int i = 0; i < spec.terms(); ++i) all_rows[static_cast<std::size_t>(i)] = i;
  for (const GaleRoot& root : sol.roots) {
    IntersectionPoint p;
    p.lambda.resize(basis.cols());
    p.lambda.head(basis.cols() - 1) = root.y;
    p.lambda(basis.cols() - 1) = 1.0;
    p.point = xi_from_logs(basis.matrix(), root.form_logs, all_rows);
    std::vector<std::int8_t> raw;
    for (char ch : root.cell) raw.push_back(ch == '+' ? 1 : -1);
    p.sigma = SignVector(raw).str();
    p.source = "main";
    out.points.push_back(std::move(p));
  }
  out.main_count = static_cast<int>(out.points.size());
  if (!completed) return out;

  const Matrix slopes = line.constraints.rightCols(basis.cols());
  const Vector offsets = line.constraints.col(0);
  for (const FaceFiber& fiber : face_fibers(spec, basis)) {
    const Matrix& bw = fiber.face_basis;
    const int q = static_cast<int>(bw.cols());
    if (q == 0) continue;
    bool apex = false;
    for (int i = 0; i < bw.rows(); ++i) apex = apex || bw.row(i).cwiseAbs().maxCoeff() < 1e-9;
    if (apex) continue;
    Matrix bj(static_cast<Eigen::Index>(fiber.columns.size()), basis.cols());
    for (std::size_t l = 0; l < fiber.columns.size(); ++l) bj.row(static_cast<Eigen::Index>(l)) = basis.row(fiber.columns[l]);
    const Matrix& free = fiber.free_directions;
    const Matrix mq = slopes * free;
    // Equations left after eliminating the free fiber coordinates.
    const Matrix elim = mq.cols() > 0 ? orthonormal_null_space(mq.transpose()) : Matrix::Identity(slopes.rows(), slopes.rows());
    const int reduced = static_cast<int>(elim.cols());
    if (reduced != q - 1) {
      // A fiber parallel to the line (or the line inside it) is not generic.
      if (reduced < q - 1) out.degenerate = true;
      continue;
    }
    std::optional<SignVector> face_sigma;
    if (sigma && fiber_signs == FiberSigns::projected) face_sigma = sigma->restrict_to(fiber.columns);

    std::vector<std::pair<Vector, Vector>> params;  // (lambda', log|forms|)
    if (q == 1) {
      const Vector lp = Vector::Ones(1);
      const Vector values = bw * lp;
      std::vector<std::int8_t> raw;
      for (Eigen::Index i = 0; i < values.size(); ++i) raw.push_back(values(i) < 0 ? -1 : 1);
      if (face_sigma && !face_sigma->matches(raw)) continue;
      params.emplace_back(lp, values.cwiseAbs().array().log().matrix());
    } else {
      const Matrix exps = bj * slopes.transpose() * elim;
      GaleSystem sub = make_system(bw, exps, elim.transpose() * offsets);
      if (face_sigma) {
        sub.selection = CellSelection::classes;
        sub.classes = {*face_sigma};
      }
      const GaleSolution fsol = solve_gale(sub, resolution, line.seed);
      out.degenerate = out.degenerate || fsol.degenerate;
      for (const GaleRoot& root : fsol.roots) {
        Vector lp(q);
        lp.head(q - 1) = root.y;
        lp(q - 1) = 1.0;
        params.emplace_back(lp, root.form_logs);
      }
    }
    std::vector<int> rows(fiber.columns.size());
    for (std::size_t l = 0; l < rows.size(); ++l) rows[l] = static_cast<int>(l);
    for (const auto& [lp, logs] : params) {
      Vector point = xi_from_logs(bj, logs, rows);
      if (free.cols() > 0) {
        const Vector rhs = offsets - slopes * point;
        const Vector t = mq.completeOrthogonalDecomposition().solve(rhs);
        point += free * t;
      }
      std::string raw;
      const Vector values = bw * lp;
      for (Eigen::Index i = 0; i < values.size(); ++i) raw.push_back(values(i) < 0 ? '-' : '+');
      IntersectionPoint p;
      p.point = point;
      p.lambda = lp;
      p.sigma = face_label(sigma, spec.terms(), fiber.columns, raw);
      p.source = "face:" + std::to_string(fiber.face);
      out.points.push_back(std::move(p));
      ++out.face_count;
    }
  }
  return out;
}

LineSweepReport sweep_lines(const Spectrum& spec, const NullBasis& basis, const std::vector<SignVector>& classes,
                            int lines, std::uint64_t seed, bool completed, const Box& box, int resolution) {
  LineSweepReport report;
  report.completed = completed;
  report.bound = completed ? completed_line_bound(spec.n(), spec.k()) : line_bound(spec.n(), spec.k());
  std::uint64_t next = seed;
  for (int i = 0; i < lines; ++i) {
    LineResult result;
    for (int attempt = 0;; ++attempt) {
      const AffineLine line = AffineLine::random(basis.cols(), box, next++);
      bool degenerate = false;
      std::map<std::string, int> counts;
      for (const SignVector& cls : classes) {
        const LineIntersections hits = line_intersections(spec, basis, cls, line, completed, resolution);
        degenerate = degenerate || hits.degenerate;
        counts[cls.str()] = static_cast<int>(hits.points.size());
      }
      if (degenerate && attempt < 16) {
        std::ostringstream msg;
        msg << "line " << i << ": degenerate solve with seed " << line.seed << ", redrawn";
        report.log.push_back(msg.str());
        ++result.redraws;
        continue;
      }
      result.seed = line.seed;
      result.counts = std::move(counts);
      break;
    }
    for (const auto& [cls, n] : result.counts) result.max_count = std::max(result.max_count, n);
    result.pass = result.max_count <= report.bound;
    report.pass = report.pass && result.pass;
    report.lines.push_back(std::move(result));
  }
  return report;
}

}  // namespace fewnomial
