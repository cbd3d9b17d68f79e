#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace diolab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

/// Largest integer <= r.
Int rat_floor(const Rat& r);

/// Smallest integer >= r.
Int rat_ceil(const Rat& r);

/// r reduced mod 1 into [0, 1).
Rat rat_mod1(const Rat& r);

/// r^e for e >= 0.
Rat rat_pow(const Rat& r, unsigned e);

/// Exact k-th root of a nonnegative integer, if it is a perfect k-th power.
std::optional<Int> int_kth_root_exact(const Int& v, unsigned k);

/// Exact k-th root of a nonnegative rational, if both parts are perfect powers.
std::optional<Rat> rat_kth_root_exact(const Rat& v, unsigned k);

/// Parse "a/b" or "a" (optionally signed); throws std::invalid_argument on
/// malformed input or zero denominator.
Rat parse_rat(const std::string& text);

/// Canonical "a/b" (or "a" when the denominator is 1).
std::string rat_to_string(const Rat& r);

}  // namespace diolab
