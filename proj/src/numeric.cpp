#include "diolab/numeric.hpp"

namespace diolab {

Int rat_floor(const Rat& r) {
  Int q = rat_num(r) / rat_den(r);
  // cpp_int division truncates toward zero; fix up negatives.
  if (r < 0 && q * rat_den(r) != rat_num(r)) --q;
  return q;
}

Int rat_ceil(const Rat& r) { return -rat_floor(-r); }

Rat rat_mod1(const Rat& r) {
  Rat out = r - Rat(rat_floor(r));
  // out in [0, 1) by construction.
  return out;
}

Rat rat_pow(const Rat& r, unsigned e) {
  Rat acc = 1;
  Rat base = r;
  for (unsigned k = e; k > 0; k >>= 1) {
    if (k & 1) acc *= base;
    if (k > 1) base *= base;
  }
  return acc;
}

std::optional<Int> int_kth_root_exact(const Int& v, unsigned k) {
  if (v < 0) throw std::domain_error("int_kth_root_exact: negative input");
  if (k == 0) throw std::domain_error("int_kth_root_exact: k = 0");
  if (k == 1 || v == 0 || v == 1) return v;
  // Newton-style bisection on [1, v].
  Int lo = 1, hi = v;
  while (lo < hi) {
    Int mid = (lo + hi + 1) / 2;
    Int p = boost::multiprecision::pow(mid, k);
    if (p <= v)
      lo = mid;
    else
      hi = mid - 1;
  }
  if (boost::multiprecision::pow(lo, k) == v) return lo;
  return std::nullopt;
}

std::optional<Rat> rat_kth_root_exact(const Rat& v, unsigned k) {
  if (v < 0) throw std::domain_error("rat_kth_root_exact: negative input");
  auto n = int_kth_root_exact(rat_num(v), k);
  if (!n) return std::nullopt;
  auto d = int_kth_root_exact(rat_den(v), k);
  if (!d) return std::nullopt;
  return Rat(*n) / Rat(*d);
}

Rat parse_rat(const std::string& text) {
  auto bad = [&]() -> std::invalid_argument {
    return std::invalid_argument("parse_rat: malformed rational '" + text + "'");
  };
  if (text.empty()) throw bad();
  auto slash = text.find('/');
  auto check_int = [&](const std::string& s) {
    if (s.empty()) throw bad();
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw bad();
    for (std::size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') throw bad();
  };
  try {
    if (slash == std::string::npos) {
      check_int(text);
      return Rat(Int(text));
    }
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    check_int(num);
    check_int(den);
    Int d(den);
    if (d == 0) throw bad();
    return Rat(Int(num), d);
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw bad();
  }
}

std::string rat_to_string(const Rat& r) {
  std::string out = rat_num(r).str();
  if (rat_den(r) != 1) {
    out += "/";
    out += rat_den(r).str();
  }
  return out;
}

}  // namespace diolab
