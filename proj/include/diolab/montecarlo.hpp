#pragma once

#include "diolab/arith.hpp"
#include "diolab/psi.hpp"
#include "diolab/torus_sets.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace diolab::montecarlo {

using psi::PsiSpec;
using torus_sets::ApproxSet;

/// Substream labels for the counter-based generator. Fixed so every report is
/// a pure function of the seed; the thread count never enters.
inline constexpr std::uint64_t kHitStream = 2;
inline constexpr std::uint64_t kUnionStream = 3;

/// Dense n x m rational matrix (the sampled system of linear forms),
/// row-major. Kept rational so residual arithmetic stays exact.
struct RatMatrix {
  int n = 0;
  int m = 0;
  std::vector<Rat> a;

  RatMatrix() = default;
  /// Zero matrix; requires n, m >= 1.
  RatMatrix(int n_, int m_);
  const Rat& at(int i, int j) const;
  Rat& at(int i, int j);
};

/// Uniform sample from [0,1)^{n x m}: each entry an independent dyadic
/// rational with 128 fractional bits, a pure function of
/// (seed, stream, index, entry slot i*m + j).
RatMatrix sample_matrix(int n, int m, std::uint64_t seed, std::uint64_t stream,
                        std::uint64_t index);

/// One approximation pair (p, q) for a matrix x.
struct Solution {
  IntVec p;         // length m
  IntVec q;         // length n
  Rat residual;     // sup_j |(q x)_j - p_j|, exact; < psi(q)
  bool coprime_ok;  // gcd(p_j, gcd(q)) = 1 for every j
};

/// All solutions with q in the nonnegative orthant, 0 < |q| <= Q, in (q, p)
/// lexicographic order. Candidates for p_j cover the closed integer interval
/// [ceil((qx)_j - psi(q)), floor((qx)_j + psi(q))] and the strict residual
/// test prunes the boundary, so enumeration stays complete when psi(q) > 1/2.
/// coprime = true keeps only solutions with coprime_ok. Requires Q >= 1 and a
/// rational-valued spec whose pinned dimension (if any) matches x.
std::vector<Solution> enumerate_solutions(const RatMatrix& x, const PsiSpec& spec,
                                          std::int64_t Q, bool coprime);

struct MCReport {
  std::int64_t samples = 0;
  std::int64_t hits = 0;
  double fraction = 0.0;
  double std_error = 0.0;  // sqrt(fraction (1 - fraction) / samples)
  std::uint64_t seed = 0;
  /// Echo of the defining arguments, for report files. Never the thread count.
  std::vector<std::pair<std::string, std::string>> parameters;
};

/// Where q ranges when counting solutions. `full` extends the orthant count
/// to all of Z^n \ {0} by reflecting the sample through every sign pattern
/// (psi is read at the componentwise absolute value), so (p, q) and
/// (-p, -q) count as two pairs, as they are in Z^m x Z^n.
enum class LatticeMode { orthant, full };

std::string to_string(LatticeMode mode);

struct HitParams {
  int n = 1;
  int m = 1;
  std::int64_t Q = 1;      // height cutoff, >= 1
  std::int64_t q_min = 0;  // only heights |q| > q_min count
  std::int64_t K = 1;      // solutions needed for a hit, >= 1
  std::int64_t samples = 1;
  std::uint64_t seed = 0;
  bool coprime = false;
  LatticeMode lattice = LatticeMode::orthant;
  unsigned threads = 1;
};

/// Fraction of uniformly sampled x in [0,1)^{nm} with at least K solutions of
/// height q_min < |q| <= Q. Counting is exact integer arithmetic on the
/// dyadic samples, so the report is bit-identical for a fixed seed at any
/// thread count. Requires a rational-valued spec.
MCReport hit_fraction(const PsiSpec& spec, const HitParams& par);

/// Exact membership: every form j admits an admissible numerator p_j with
/// |(q x)_j - p_j| < epsilon, admissibility read mod gcd(q) per the set mode.
/// x must be n x m for the set's (n, m).
bool set_contains(const ApproxSet& set, const RatMatrix& x);

/// MC estimate of the measure of a finite union; membership decided exactly
/// per descriptor. Requires a nonempty list sharing one (n, m), samples >= 1.
MCReport empirical_union_measure(const std::vector<ApproxSet>& sets,
                                 std::int64_t samples, std::uint64_t seed,
                                 unsigned threads = 1);

struct LiftResult {
  /// (t p, t q) at the witness t; absent when no t in range certifies the
  /// lift at the working precision.
  std::optional<std::pair<IntVec, IntVec>> lifted;
  std::int64_t witness_t = 0;
  std::string diagnostic;  // nonempty iff lifted is absent
};

/// Multiplies a solution of the truncated transform sup_{t <= t_max}
/// psi(t q)/t up to a solution of psi itself: with t the witness of the
/// truncated supremum, (t p, t q) satisfies |(t q) x - (t p)| < psi(t q)
/// whenever |q x - p| < bar(q). The precondition residual < bar(q) is
/// checked (throws std::domain_error when the residual reaches the value);
/// the lifted strict inequality is verified before returning.
LiftResult lift_solution(const IntVec& p, const IntVec& q, const PsiSpec& spec,
                         const RatMatrix& x, std::int64_t t_max,
                         unsigned prec = kDefaultPrec);

struct CounterexampleReport {
  Rat sum;          // sum over q | N of 2 psi(q) = 2 eta sigma(N) / N
  Rat union_exact;  // exact measure of the union of the plain sets
  MCReport union_mc;
};

/// Divergence without fullness: psi(q) = eta q / N on the divisors q of N.
/// Every arc sits around a multiple of 1/N with radius eta/N, so the union
/// measure never exceeds 2 eta while the sum scales with sigma(N)/N.
/// Requires N >= 2, eta > 0, samples >= 1.
CounterexampleReport counterexample_demo(std::int64_t N, const Rat& eta,
                                         std::int64_t samples, std::uint64_t seed,
                                         unsigned threads = 1);

}  // namespace diolab::montecarlo
