#pragma once

#include "diolab/torus_sets.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace diolab::measures {

using torus_sets::ApproxSet;

/// Exact Lebesgue measure of an approximation set, via the one-dimensional
/// reduction raised to the m-th power. Depends on q only through gcd(q).
Rat measure_A(const ApproxSet& s);

/// Exact measure of the intersection of two approximation sets with the same
/// (n, m): same primitive direction reduces to a 1-D arc intersection at the
/// two scales; distinct primitive directions are independent and multiply.
Rat measure_intersection(const ApproxSet& s1, const ApproxSet& s2);

enum class RatioFlag { finite, zero_over_zero, positive_over_zero, skipped };

struct OverlapReport {
  std::int64_t k = 0, l = 0;
  Rat lhs;               // exact intersection measure
  Rat rhs;               // exact bound value, 0 when indicator is false
  bool indicator = false;
  Rat M;                 // max(l*Psi_k, k*Psi_l)
  std::optional<Rat> ratio;  // lhs/rhs when rhs > 0
  RatioFlag flag = RatioFlag::finite;
  std::string skip_reason;  // nonempty iff flag == skipped
};

/// Pairwise-overlap bound for coprime-filtered sets at scales k != l with
/// radii Psi_k, Psi_l: the exact intersection measure against
///   1{M >= gcd} * (phi(k) Psi_k / k)(phi(l) Psi_l / l) *
///     prod over primes p | kl/gcd^2 with p > M/gcd of (1 + 1/p).
/// Requires Psi_d <= d/(2 phi(d)) for both scales.
OverlapReport pv_overlap_bound(std::int64_t k, std::int64_t l, const Rat& Psi_k,
                               const Rat& Psi_l);

/// All pairs 1 <= k < l <= K, sorted by descending ratio (positive/zero
/// first, then finite ratios, then 0/0, then skipped pairs; ties by (k, l)).
/// Pairs violating the radius hypothesis are reported and skipped.
std::vector<OverlapReport> overlap_ratio_scan(const std::map<std::int64_t, Rat>& Psi,
                                              std::int64_t K);

/// (sum mu)^2 / (sum of all entries of mu_pair). Requires mu_pair symmetric
/// with diagonal mu and a positive total.
Rat chung_erdos_bound(const std::vector<Rat>& mu,
                      const std::vector<std::vector<Rat>>& mu_pair);

/// Exact sum over X <= k < l <= Y of the m-th powers of the 1-D intersection
/// measures at radii Psi(k), Psi(l). Requires Psi in [0, 1/2] on [X, Y].
Rat window_pair_sum(const std::map<std::int64_t, Rat>& Psi, std::int64_t X,
                    std::int64_t Y, int m);

enum class WindowStatus { found, overshoot, exhausted };

struct WindowResult {
  WindowStatus status;
  std::int64_t Y = 0;  // meaningful when found
  Rat sum;             // the window sum at Y (or at the failure point)
};

/// Smallest Y in [X, Y_max] with
///   (1/2)^(m-1) < sum_{X <= d <= Y} (phi(d) Psi(d) / d)^m < (1/2)^(m-2),
/// scanning partial sums upward. overshoot: the first crossing already
/// exceeds the upper bound; exhausted: the sum never leaves the lower region.
WindowResult find_window(const std::function<Rat(std::int64_t)>& Psi_provider, int m,
                         std::int64_t X, std::int64_t Y_max);

/// (phi(d) eps / d)^m, a guaranteed lower bound for the coprime-filtered set
/// measure when eps <= d/(2 phi(d)).
Rat lower_bound_measure(std::int64_t d, const Rat& eps, int m);

}  // namespace diolab::measures
