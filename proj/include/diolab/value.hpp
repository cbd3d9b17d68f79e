#pragma once

#include "diolab/numeric.hpp"

#include <mpfr.h>

#include <optional>
#include <variant>

namespace diolab {

inline constexpr unsigned kDefaultPrec = 128;

/// Enclosure [lo, hi] of a nonnegative real, endpoints rounded outward
/// (RNDD / RNDU) at every operation. Invariant: 0 <= lo <= hi.
class FloatInterval {
 public:
  explicit FloatInterval(unsigned prec = kDefaultPrec);
  FloatInterval(const FloatInterval& o);
  FloatInterval(FloatInterval&& o) noexcept;
  FloatInterval& operator=(const FloatInterval& o);
  FloatInterval& operator=(FloatInterval&& o) noexcept;
  ~FloatInterval();

  static FloatInterval from_rat(const Rat& r, unsigned prec);

  unsigned prec() const { return prec_; }

  FloatInterval add(const FloatInterval& o) const;
  FloatInterval mul(const FloatInterval& o) const;
  /// Requires o.lo > 0.
  FloatInterval div(const FloatInterval& o) const;
  FloatInterval max(const FloatInterval& o) const;
  /// base^e over the enclosure; exponent handled by four-corner rounding.
  FloatInterval pow_rat(const Rat& e) const;
  FloatInterval root(unsigned k) const;

  /// Exact comparisons against a rational; nullopt when the enclosure
  /// straddles r.
  std::optional<bool> less_than(const Rat& r) const;
  std::optional<bool> less_equal(const Rat& r) const;

  double lo_d() const;
  double hi_d() const;
  /// Midpoint as a double, for display.
  double mid_d() const;
  /// Upper bound on |mid_d() - true value|, including the double conversion.
  double err_d() const;

 private:
  mpfr_t lo_, hi_;
  unsigned prec_;
  friend FloatInterval make_interval(unsigned prec);
};

/// Exact rational when the arithmetic permits, directed-rounding enclosure
/// otherwise. Mixed operations promote to enclosures.
class Value {
 public:
  Value() : v_(Rat(0)) {}
  Value(Rat r) : v_(std::move(r)) {}
  Value(FloatInterval f) : v_(std::move(f)) {}
  Value(int n) : v_(Rat(n)) {}

  bool exact() const { return std::holds_alternative<Rat>(v_); }
  const Rat& rat() const;
  const FloatInterval& interval() const;
  /// Enclosure view regardless of representation.
  FloatInterval to_interval(unsigned prec = kDefaultPrec) const;

  friend Value operator+(const Value& a, const Value& b);
  friend Value operator*(const Value& a, const Value& b);
  Value div(const Value& o) const;
  static Value max(const Value& a, const Value& b);

  /// v^e for integer e; negative e requires a positive value.
  Value pow_int(long e) const;
  /// v^e for rational e; stays exact when the exact root exists.
  Value pow_rat(const Rat& e, unsigned prec = kDefaultPrec) const;
  /// k-th root; exact when numerator and denominator are perfect powers.
  Value root(unsigned k, unsigned prec = kDefaultPrec) const;

  std::optional<bool> less_than(const Rat& r) const;
  std::optional<bool> less_equal(const Rat& r) const;
  bool is_zero() const;

  double approx() const;
  double abs_error() const;

 private:
  std::variant<Rat, FloatInterval> v_;
};

/// double approximation of an exact rational (display / heuristics only).
double rat_to_double(const Rat& r);

}  // namespace diolab
