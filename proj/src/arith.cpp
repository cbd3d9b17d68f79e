#include "diolab/arith.hpp"

#include <algorithm>
#include <numeric>

namespace diolab {

bool IntVec::is_zero() const {
  for (auto x : c)
    if (x != 0) return false;
  return true;
}

std::int64_t IntVec::norm() const {
  std::int64_t m = 0;
  for (auto x : c) m = std::max(m, x < 0 ? -x : x);
  return m;
}

bool IntVec::nonnegative() const {
  for (auto x : c)
    if (x < 0) return false;
  return true;
}

IntVec operator*(std::int64_t s, const IntVec& v) {
  IntVec out = v;
  for (auto& x : out.c) x *= s;
  return out;
}

std::string to_string(const IntVec& v) {
  std::string s = "(";
  for (int i = 0; i < v.dim(); ++i) {
    if (i) s += ",";
    s += std::to_string(v.c[i]);
  }
  s += ")";
  return s;
}

namespace arith {

std::int64_t vec_gcd(const IntVec& v) {
  if (v.is_zero()) throw std::domain_error("vec_gcd: zero vector");
  std::int64_t g = 0;
  for (auto x : v.c) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

PrimitiveDecomposition primitive_part(const IntVec& q) {
  std::int64_t g = vec_gcd(q);
  IntVec dir = q;
  for (auto& x : dir.c) x /= g;
  return {g, dir};
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  if (n == 0) throw std::domain_error("factorize: n = 0");
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2) ? 1 : 2) {
    if (n % p) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::uint64_t totient(std::uint64_t n) {
  std::uint64_t phi = n;
  for (auto [p, e] : factorize(n)) phi -= phi / p;
  return phi;
}

int mobius(std::uint64_t n) {
  int sign = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

std::uint64_t radical(std::uint64_t n) {
  std::uint64_t r = 1;
  for (auto [p, e] : factorize(n)) r *= p;
  return r;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out{1};
  for (auto [p, e] : factorize(n)) {
    std::size_t base = out.size();
    std::uint64_t pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Int coprime_count(std::int64_t Q, std::uint64_t g) {
  if (Q < 0) throw std::domain_error("coprime_count: Q < 0");
  if (g == 0) throw std::domain_error("coprime_count: g = 0");
  Int total = 0;
  for (std::uint64_t d : divisors(radical(g))) {
    Int block = 2 * (Q / static_cast<std::int64_t>(d)) + 1;
    total += mobius(d) * block;
  }
  return total;
}

Int phi_m(const IntVec& q, int m, PhiMode mode) {
  if (q.is_zero()) throw std::domain_error("phi_m: zero vector");
  if (m < 1) throw std::domain_error("phi_m: m < 1");
  std::int64_t Q = q.norm();
  std::int64_t g = vec_gcd(q);
  if (mode == PhiMode::componentwise) {
    Int per = coprime_count(Q, static_cast<std::uint64_t>(g));
    Int out = 1;
    for (int j = 0; j < m; ++j) out *= per;
    return out;
  }
  // Joint mode: Moebius over divisors of radical(g) applied to the whole
  // tuple, #{p : d | gcd(p, g)} = (2*floor(Q/d)+1)^m.
  Int total = 0;
  for (std::uint64_t d : divisors(radical(static_cast<std::uint64_t>(g)))) {
    Int block = 2 * (Q / static_cast<std::int64_t>(d)) + 1;
    Int pw = 1;
    for (int j = 0; j < m; ++j) pw *= block;
    total += mobius(d) * pw;
  }
  return total;
}

PrimitiveVectors::PrimitiveVectors(int n, std::int64_t H)
    : n_(n), H_(H), cur_(static_cast<std::size_t>(n), 0), done_(false), started_(false) {
  if (n < 1) throw std::domain_error("PrimitiveVectors: n < 1");
  if (H < 1) throw std::domain_error("PrimitiveVectors: H < 1");
}

bool PrimitiveVectors::advance_raw() {
  // Odometer on [0, H]^n, lexicographic: increment the last coordinate.
  if (!started_) {
    started_ = true;  // start at the all-zero tuple, caller filters it out
    return true;
  }
  int i = n_ - 1;
  while (i >= 0 && cur_[static_cast<std::size_t>(i)] == H_) {
    cur_[static_cast<std::size_t>(i)] = 0;
    --i;
  }
  if (i < 0) return false;
  ++cur_[static_cast<std::size_t>(i)];
  return true;
}

bool PrimitiveVectors::next(IntVec& out) {
  if (done_) return false;
  while (advance_raw()) {
    IntVec v{std::vector<std::int64_t>(cur_.begin(), cur_.end())};
    if (v.is_zero()) continue;
    if (vec_gcd(v) == 1) {
      out = v;
      return true;
    }
  }
  done_ = true;
  return false;
}

std::vector<IntVec> primitive_vectors(int n, std::int64_t H) {
  PrimitiveVectors stream(n, H);
  std::vector<IntVec> out;
  IntVec v;
  while (stream.next(v)) out.push_back(v);
  return out;
}

}  // namespace arith
}  // namespace diolab
