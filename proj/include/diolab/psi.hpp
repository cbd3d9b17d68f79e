#pragma once

#include "diolab/arith.hpp"
#include "diolab/config.hpp"
#include "diolab/value.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>

namespace diolab::psi {

enum class ThresholdPart { small_part, large_part };

/// Immutable symbolic approximating function on the nonzero points of the
/// nonnegative orthant of Z^n. Variants:
///
///   power_law         psi(q) = c * |q|^(-tau), sup norm
///   radial_table      finite table keyed by |q|, 0 off the table
///   explicit_table    finite table keyed by q itself, 0 off the table
///   ds_counterexample psi(q) = eta * q / N on the divisors q of N (1-D), else 0
///   catlin_transform  psi_bar(q) = max over 1 <= t <= t_max of inner(t q) / t
///   threshold_part    the small (value <= d / (2 phi(d)) at q with d = gcd(q))
///                     or large (the rest) part of inner; the parts sum to inner
///
/// Evaluation is exact whenever the defining arithmetic is rational; power
/// laws with non-integer exponents fall back to directed-rounding enclosures
/// except where a perfect power keeps the root exact.
class PsiSpec {
 public:
  enum class Kind {
    power_law,
    radial_table,
    explicit_table,
    ds_counterexample,
    catlin_transform,
    threshold_part,
  };

  static PsiSpec power_law(const Rat& c, const Rat& tau);
  static PsiSpec radial_table(std::map<std::int64_t, Rat> values);
  static PsiSpec explicit_table(std::map<IntVec, Rat> values);
  static PsiSpec ds_counterexample(std::int64_t N, const Rat& eta);
  static PsiSpec catlin_transform(PsiSpec inner, std::int64_t t_max);
  static PsiSpec threshold_part(PsiSpec inner, ThresholdPart part);

  Kind kind() const;

  /// Lattice dimension pinned by the variant (explicit_table keys,
  /// ds_counterexample = 1); nullopt when the spec works in any dimension.
  std::optional<int> dim() const;

  /// True when eval is guaranteed to return an exact rational everywhere.
  bool rational_valued() const;

  /// Sup-norm radius beyond which the function vanishes identically, when the
  /// variant certifies one (tables, divisor support; wrappers inherit).
  std::optional<std::int64_t> support_norm() const;

  /// psi(q). Requires q nonzero, in the nonnegative orthant, and matching the
  /// pinned dimension; throws std::domain_error otherwise (also when a
  /// threshold comparison is undecidable at the working precision).
  Value eval(const IntVec& q, unsigned prec = kDefaultPrec) const;

  // Variant accessors; throw std::logic_error on kind mismatch.
  const Rat& power_law_c() const;
  const Rat& power_law_tau() const;
  const std::map<std::int64_t, Rat>& radial_values() const;
  const std::map<IntVec, Rat>& explicit_values() const;
  std::int64_t counterexample_N() const;
  const Rat& counterexample_eta() const;
  const PsiSpec& inner() const;
  std::int64_t transform_t_max() const;
  ThresholdPart part() const;

  /// Canonical structured-text form (see config.hpp); round-trips through
  /// from_node / parse.
  config::Node to_node() const;
  static PsiSpec from_node(const config::Node& node);
  std::string to_config() const;
  static PsiSpec parse(std::string_view text);

 private:
  struct Data;
  explicit PsiSpec(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

/// Truncated Catlin supremum max_{1 <= t <= t_max} psi(t q) / t.
struct CatlinBar {
  Value value;
  /// Smallest t attaining the reported maximum (within evaluation error when
  /// enclosures are involved).
  std::int64_t witness_t = 1;
  /// True when the truncation provably equals the supremum over every t >= 1
  /// (monotone power laws, exhausted finite support).
  bool exact_sup = false;
};

CatlinBar catlin_bar(const PsiSpec& spec, const IntVec& q, std::int64_t t_max,
                     unsigned prec = kDefaultPrec);

/// The (small, large) threshold parts; they sum to spec pointwise.
std::pair<PsiSpec, PsiSpec> threshold_split(const PsiSpec& spec);

}  // namespace diolab::psi
