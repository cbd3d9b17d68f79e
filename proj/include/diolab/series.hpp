#pragma once

#include "diolab/arith.hpp"
#include "diolab/psi.hpp"
#include "diolab/value.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace diolab::series {

/// Heuristic trend label fitted to the partial sums; divergence is not
/// decidable from finite data, so this is a hint, never a verdict.
enum class VerdictHint { diverging_trend, converging_trend, inconclusive };

std::string to_string(VerdictHint v);

/// Truncated series evaluation. partial_sum is exact for rational-valued
/// specs and a directed-rounding enclosure otherwise. term_count counts the
/// nonzero terms. last_block_sum is the contribution of the top half of the
/// principal cutoff (shells above floor(Q/2)), accumulated directly rather
/// than by subtraction so enclosures stay tight. verdict_hint comes from a
/// least-squares slope of the partial sums against the log of the cutoff,
/// sampled at powers of two.
struct SeriesReport {
  std::vector<std::pair<std::string, std::int64_t>> cutoffs;
  Value partial_sum;
  std::int64_t term_count = 0;
  Value last_block_sum;
  VerdictHint verdict_hint = VerdictHint::inconclusive;
};

/// Sum over 0 < |q| <= Q in the nonnegative orthant of Z^n of
/// (phi(g) psi(q) / g)^m with g = gcd(q). Terms are grouped in shells of the
/// sup norm, lexicographic within a shell (a fixed summation tree).
SeriesReport ds_sum(const psi::PsiSpec& spec, int n, int m, std::int64_t Q,
                    unsigned prec = kDefaultPrec);

/// The same series factored through primitive directions: sum over primitive
/// |q'| <= H_prim and 1 <= d <= D of (phi(d) psi(d q') / d)^m. Shells run
/// over d; the trend and block fields use D as the principal cutoff.
SeriesReport ds_sum_factored(const psi::PsiSpec& spec, int n, int m,
                             std::int64_t H_prim, std::int64_t D,
                             unsigned prec = kDefaultPrec);

/// Truncated aggregated radius (sum over primitive |q'| <= H of
/// psi(d q')^m)^(1/m), with a rigorous tail bound where one is available.
struct CapitalPsiReport {
  /// m-th root of the truncated sum; exact when the sum is a perfect power.
  Value value;
  /// Rigorous upper bound on the omitted sum over |q'| > H: exact 0 once a
  /// finite support is exhausted, an integral-comparison bound for power
  /// laws with tau * m > n, absent otherwise.
  std::optional<Value> sum_tail_bound;
  /// (truncated sum + tail bound)^(1/m), an upper enclosure for the full
  /// aggregated radius; present iff sum_tail_bound is.
  std::optional<Value> value_upper;
  /// Power law with tau * m <= n: the tail genuinely diverges.
  bool tail_unbounded = false;
};

CapitalPsiReport capital_psi(const psi::PsiSpec& spec, int n, int m,
                             std::int64_t d, std::int64_t H,
                             unsigned prec = kDefaultPrec);

/// Sum over the orthant of Phi_m(q) (psi_bar(q) / |q|)^m, psi_bar the Catlin
/// supremum truncated at t_max and Phi_m the admissible-numerator count.
SeriesReport catlin_sum(const psi::PsiSpec& spec, int n, int m, std::int64_t Q,
                        std::int64_t t_max,
                        arith::PhiMode mode = arith::PhiMode::joint,
                        unsigned prec = kDefaultPrec);

/// Sum over 1 <= q <= Q of psi(q)^m. Requires a radial spec (no pinned
/// dimension other than 1).
SeriesReport khintchine_sum(const psi::PsiSpec& spec, int m, std::int64_t Q,
                            unsigned prec = kDefaultPrec);

/// Sum over 1 <= q <= Q of q^(n-1) psi(q)^m, same radial requirement.
SeriesReport kg_sum(const psi::PsiSpec& spec, int n, int m, std::int64_t Q,
                    unsigned prec = kDefaultPrec);

/// Sum over the orthant of psi(q)^m.
SeriesReport bv_sum(const psi::PsiSpec& spec, int n, int m, std::int64_t Q,
                    unsigned prec = kDefaultPrec);

/// Hausdorff variant of ds_sum with dimension function r^s (s > 0): sum of
/// (phi(g) |q| / g)^m (psi(q) / |q|)^s. s = m reproduces ds_sum term by term.
SeriesReport hausdorff_ds_sum(const psi::PsiSpec& spec, int n, int m,
                              const Rat& s, std::int64_t Q,
                              unsigned prec = kDefaultPrec);

/// Hausdorff variant of catlin_sum: sum of Phi_m(q) (psi_bar(q) / |q|)^s.
SeriesReport hausdorff_catlin_sum(const psi::PsiSpec& spec, int n, int m,
                                  const Rat& s, std::int64_t Q,
                                  std::int64_t t_max,
                                  arith::PhiMode mode = arith::PhiMode::joint,
                                  unsigned prec = kDefaultPrec);

}  // namespace diolab::series
