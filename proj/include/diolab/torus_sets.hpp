#pragma once

#include "diolab/arc_union.hpp"
#include "diolab/arith.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace diolab::torus_sets {

/// Which numerators p count as approximants: every residue, the residues
/// coprime to the denominator, or an explicit coprime subset.
enum class SetMode { plain, coprime, filtered };

/// One-dimensional approximation set: the union over admissible numerators
/// p in {0..d-1} of arcs of radius epsilon/d around p/d. epsilon >= d/2
/// covers the whole circle.
ArcUnion approx_set_1d(std::int64_t d, const Rat& epsilon, SetMode mode,
                       const std::optional<std::vector<std::int64_t>>& numerator_filter =
                           std::nullopt);

/// Greedy subset P of the residues coprime to d with pairwise circle distance
/// >= 1/phi(d): ascending sweep, keep-first, wrap distance checked against
/// the first kept element. Guarantees |P| >= phi(d)/3.
std::vector<std::int64_t> select_separated_numerators(std::int64_t d);

/// Equal-radius open balls on the circle.
struct BallFamily1D {
  std::vector<Rat> centers;  // in [0, 1)
  Rat radius;                // > 0
  bool disjoint;

  /// Validates ranges; when claim_disjoint, checks pairwise circle distance
  /// of centers >= 2 * radius (open arcs may touch).
  static BallFamily1D make(std::vector<Rat> centers, Rat radius, bool claim_disjoint);
  ArcUnion to_arc_union() const;
};

/// Concentric scaling: same centers, radius shrunk by sigma in (0, 1].
/// Disjointness is preserved.
BallFamily1D scale_concentric(const BallFamily1D& f, const Rat& sigma);

/// Approximation set on T^{nm} for a direction q, described by its exact
/// one-dimensional reduction: measure = measure_1d(gcd(q), epsilon, mode)^m.
struct ApproxSet {
  int n = 1;
  int m = 1;
  IntVec q;
  Rat epsilon;
  SetMode mode = SetMode::coprime;
  std::optional<std::vector<std::int64_t>> numerator_filter;

  /// Throws std::domain_error on inconsistent fields.
  void validate() const;
  /// The 1-D set at scale gcd(q).
  ArcUnion reduced() const;
};

struct StripeEstimate {
  double estimate;
  double stderr_;
  Rat product;  // exact product of the two stripe measures
  std::int64_t samples;
  std::uint64_t seed;
};

/// Monte Carlo measure of the intersection of two stripes
///   E(q, v, e) = { x in T^n : dist(q . (x - v), gcd(q) Z) < e },
/// against the exact product of their measures min(1, 2 e_i / gcd(q_i)).
/// Requires q1, q2 linearly independent over Q and n >= 2. Deterministic per
/// seed, independent of thread count.
StripeEstimate stripe_independence_estimate(const IntVec& q1, const IntVec& q2,
                                            const std::vector<Rat>& v1,
                                            const std::vector<Rat>& v2, const Rat& e1,
                                            const Rat& e2, std::int64_t samples,
                                            std::uint64_t seed, unsigned threads = 1);

}  // namespace diolab::torus_sets
