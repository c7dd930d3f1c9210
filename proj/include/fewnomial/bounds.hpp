#pragma once

#include <optional>
#include <string>
#include <vector>

namespace fewnomial {

/// Root bound S(m, j) for Gale dual systems: (e^2+3)/4 * 2^(j(j-1)/2) * m^j
/// for j >= 2, m + 1 for j = 1 and 1 for j <= 0. Overflows to +inf.
double s_bound(int m, int j);

/// Natural logarithm of s_bound, finite for every m >= 1.
double log_s_bound(int m, int j);

/// floor(x), flagging values within 1e-9 (relative) of an integer, where the
/// floor is numerically ambiguous.
struct GuardedFloor {
  double value = 0.0;
  bool near_integer = false;
};

GuardedFloor guarded_floor(double x);

/// Upper bound on the number of connected components of a real zero set of
/// an n-variate exponential sum with n + k terms. Integral, returned as a
/// double so large cases do not overflow.
double theorem1_bound(int n, int k);

/// (n+k)(n+k-1)/2, the bound for sums whose reduced coefficients lie in an
/// outer chamber.
double outer_chamber_bound(int n, int k);

struct RefinedBounds {
  double simplicial = 0.0;
  double general = 0.0;
};

/// Requires n >= 2, k >= 3.
RefinedBounds refined_bounds(int n, int k);

/// T(n,k) = (S(n+2,k-2) + S(n+1,k-5) + ... + S(n+2-M, k-2-3M) + M) / 2,
/// M = min(n+1, floor((k-2)/3)). Requires n >= 2, k >= 4.
double t_bound(int n, int k);

/// Bound on the points a generic line shares with a completed signed
/// contour: 1 for k = 2, n + 5 for k = 3, 2 T(n,k) for k >= 4.
double completed_line_bound(int n, int k);

/// Bound on the points a generic line shares with a signed contour:
/// floor(S(n+2, k-2)).
double line_bound(int n, int k);

struct BoundReport {
  int n = 0;
  int k = 0;
  double theorem1 = 0.0;
  std::optional<double> theorem1_k3;  // the sharper k = 3 value when k == 3
  double outer = 0.0;
  std::optional<double> simplicial_refined;  // n >= 2, k >= 3
  std::optional<double> general_refined;
  std::optional<double> t_bound;  // n >= 2, k >= 4
  std::vector<std::string> flags;  // near-integer floors and similar notes
};

BoundReport bound_report(int n, int k);

/// Reports for 1 <= n <= nmax, 1 <= k <= kmax.
std::vector<BoundReport> bound_table(int nmax, int kmax);

/// Checks S(n+1, k'+k''-2) >= S(n+1,k'-2) + S(n+1,k''-2) for 2 <= k', k''
/// with k'+k'' <= max_k, and S(n+1,k-5) + 1 >= sum_i S(n+1, k_i - 2) over
/// every partition k_1 + ... + k_r = k - 1 with parts >= 2 and r >= 2,
/// k <= max_k. Requires n >= 2, max_k <= 12.
bool check_sum_lemma(int n, int max_k);

}  // namespace fewnomial
