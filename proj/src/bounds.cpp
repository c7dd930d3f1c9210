#include "fewnomial/bounds.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "fewnomial/errors.hpp"

namespace fewnomial {

namespace {

const double kLeading = (std::exp(2.0) + 3.0) / 4.0;

// Above this power-of-two exponent the product is assembled in log space.
constexpr long kLogSpaceExponent = 400;

double pow_int(double base, long e) {
  double out = 1.0;
  for (long i = 0; i < e; ++i) out *= base;
  return out;
}

// 2^e * base^p exactly when it fits in 64 bits.
std::optional<double> exact_power_product(long e, long base, long p) {
  if (e > 62) return std::nullopt;
  unsigned __int128 acc = static_cast<unsigned __int128>(1) << e;
  const unsigned __int128 limit = static_cast<unsigned __int128>(1) << 100;
  for (long i = 0; i < p; ++i) {
    acc *= static_cast<unsigned __int128>(base);
    if (acc > limit) return std::nullopt;
  }
  return static_cast<double>(acc);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

std::string describe(const char* name, int n, int k, double x) {
  std::ostringstream out;
  out.precision(17);
  out << name << "(" << n << "," << k << "): floor of " << x << " is within 1e-9 of an integer";
  return out.str();
}

}  // namespace

double s_bound(int m, int j) {
  if (j <= 0) return 1.0;
  if (j == 1) return m + 1.0;
  const long e = static_cast<long>(j) * (j - 1) / 2;
  if (e > kLogSpaceExponent) return std::exp(log_s_bound(m, j));
  return kLeading * std::ldexp(pow_int(static_cast<double>(m), j), static_cast<int>(e));
}

double log_s_bound(int m, int j) {
  if (j <= 0) return 0.0;
  if (j == 1) return std::log(m + 1.0);
  const double e = static_cast<double>(j) * (j - 1) / 2.0;
  return std::log(kLeading) + e * std::numbers::ln2 + j * std::log(static_cast<double>(m));
}

GuardedFloor guarded_floor(double x) {
  GuardedFloor out;
  out.value = std::floor(x);
  if (std::isfinite(x)) {
    const double nearest = std::round(x);
    out.near_integer = std::abs(x - nearest) <= 1e-9 * std::max(1.0, std::abs(x)) && x != nearest;
  }
  return out;
}

double outer_chamber_bound(int n, int k) {
  require(n >= 1 && k >= 1, "outer chamber bound needs n, k >= 1");
  const double t = static_cast<double>(n) + k;
  return t * (t - 1) / 2;
}

double theorem1_bound(int n, int k) {
  require(n >= 1 && k >= 1, "theorem bound needs n, k >= 1");
  if (n == 1) return k;
  if (k == 1) return 1;
  if (k == 2) return 2;
  if (k == 3) return (n + 3.0) * (n + 2.0) / 2 + std::floor((n + 5) / 2);
  const long e = static_cast<long>(k - 2) * (k - 3) / 2;
  double extra = 0.0;
  if (auto exact = exact_power_product(e, n + 2, k - 2)) {
    extra = *exact;
  } else if (e > kLogSpaceExponent) {
    extra = std::floor(std::exp(e * std::numbers::ln2 + (k - 2) * std::log(n + 2.0)));
  } else {
    extra = std::floor(std::ldexp(pow_int(n + 2.0, k - 2), static_cast<int>(e)));
  }
  return outer_chamber_bound(n, k) + extra;
}

RefinedBounds refined_bounds(int n, int k) {
  require(n >= 2 && k >= 3, "refined bounds need n >= 2, k >= 3");
  const double outer = outer_chamber_bound(n, k);
  RefinedBounds out;
  out.simplicial = outer + guarded_floor(s_bound(n + 2, k - 2) / 2).value;
  out.general = outer + guarded_floor((s_bound(n + 2, k - 2) + s_bound(n + 1, k - 4)) / 2).value;
  return out;
}

namespace {

double completed_sum(int n, int k) {
  const int m = std::min(n + 1, (k - 2) / 3);
  double sum = m;
  for (int i = 0; i <= m; ++i) sum += s_bound(n + 2 - i, k - 2 - 3 * i);
  return sum;
}

}  // namespace

double t_bound(int n, int k) {
  require(n >= 2 && k >= 4, "T(n,k) needs n >= 2, k >= 4");
  return completed_sum(n, k) / 2;
}

double completed_line_bound(int n, int k) {
  require(n >= 1 && k >= 2, "line bounds need k >= 2");
  if (k == 2) return 1;
  if (k == 3) return n + 5;
  return std::floor(completed_sum(n, k));
}

double line_bound(int n, int k) {
  require(n >= 1 && k >= 2, "line bounds need k >= 2");
  return guarded_floor(s_bound(n + 2, k - 2)).value;
}

BoundReport bound_report(int n, int k) {
  BoundReport r;
  r.n = n;
  r.k = k;
  r.theorem1 = theorem1_bound(n, k);
  if (k == 3 && n >= 2) r.theorem1_k3 = r.theorem1;
  r.outer = outer_chamber_bound(n, k);
  if (n >= 2 && k >= 3) {
    const RefinedBounds rb = refined_bounds(n, k);
    r.simplicial_refined = rb.simplicial;
    r.general_refined = rb.general;
    const GuardedFloor a = guarded_floor(s_bound(n + 2, k - 2) / 2);
    const GuardedFloor b = guarded_floor((s_bound(n + 2, k - 2) + s_bound(n + 1, k - 4)) / 2);
    if (a.near_integer) r.flags.push_back(describe("simplicial", n, k, s_bound(n + 2, k - 2) / 2));
    if (b.near_integer) r.flags.push_back(describe("general", n, k, (s_bound(n + 2, k - 2) + s_bound(n + 1, k - 4)) / 2));
  }
  if (n >= 2 && k >= 4) r.t_bound = t_bound(n, k);
  return r;
}

std::vector<BoundReport> bound_table(int nmax, int kmax) {
  require(nmax >= 1 && kmax >= 1, "table needs nmax, kmax >= 1");
  std::vector<BoundReport> out;
  for (int n = 1; n <= nmax; ++n)
    for (int k = 1; k <= kmax; ++k) out.push_back(bound_report(n, k));
  return out;
}

bool check_sum_lemma(int n, int max_k) {
  require(n >= 2, "sum lemma needs n >= 2");
  require(max_k <= 12, "sum lemma sweep is limited to max_k <= 12");
  const int m = n + 1;
  for (int k1 = 2; k1 <= max_k; ++k1) {
    for (int k2 = 2; k1 + k2 <= max_k; ++k2) {
      if (s_bound(m, k1 + k2 - 2) < s_bound(m, k1 - 2) + s_bound(m, k2 - 2)) return false;
    }
  }
  bool ok = true;
  for (int k = 5; k <= max_k && ok; ++k) {
    const double lhs = s_bound(m, k - 5) + 1;
    // Partitions of k - 1 into r >= 2 parts, each >= 2, parts nonincreasing.
    std::function<void(int, int, int, double)> walk = [&](int rest, int cap, int parts, double sum) {
      if (!ok) return;
      if (rest == 0) {
        if (parts >= 2 && sum > lhs) ok = false;
        return;
      }
      for (int part = std::min(rest, cap); part >= 2; --part) {
        walk(rest - part, part, parts + 1, sum + s_bound(m, part - 2));
      }
    };
    walk(k - 1, k - 1, 0, 0.0);
  }
  return ok;
}

}  // namespace fewnomial
