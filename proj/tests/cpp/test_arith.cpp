#include "doctest.h"

#include "diolab/arith.hpp"

#include <numeric>
#include <set>

using namespace diolab;
using namespace diolab::arith;

namespace {

// Direct count of p in [-Q, Q] with gcd(p, g) = 1; the oracle for the
// Moebius-inversion implementation.
Int coprime_count_brute(std::int64_t Q, std::uint64_t g) {
  Int n = 0;
  for (std::int64_t p = -Q; p <= Q; ++p) {
    std::uint64_t a = static_cast<std::uint64_t>(p < 0 ? -p : p);
    if (std::gcd(a, g) == 1) ++n;
  }
  return n;
}

Int phi_m_brute(const IntVec& q, int m, PhiMode mode) {
  std::int64_t Q = q.norm();
  std::int64_t g = vec_gcd(q);
  std::vector<std::int64_t> p(static_cast<std::size_t>(m), -Q);
  Int count = 0;
  while (true) {
    if (mode == PhiMode::joint) {
      std::int64_t acc = g;
      for (auto x : p) acc = std::gcd(acc, x < 0 ? -x : x);
      if (acc == 1) ++count;
    } else {
      bool ok = true;
      for (auto x : p)
        if (std::gcd(g, x < 0 ? -x : x) != 1) ok = false;
      if (ok) ++count;
    }
    int i = m - 1;
    while (i >= 0 && p[static_cast<std::size_t>(i)] == Q) {
      p[static_cast<std::size_t>(i)] = -Q;
      --i;
    }
    if (i < 0) break;
    ++p[static_cast<std::size_t>(i)];
  }
  return count;
}

}  // namespace

TEST_CASE("factorization primitives") {
  CHECK(factorize(1).empty());
  CHECK(factorize(12) == std::vector<std::pair<std::uint64_t, unsigned>>{{2, 2}, {3, 1}});
  CHECK(totient(1) == 1);
  CHECK(totient(12) == 4);
  CHECK(totient(97) == 96);
  CHECK(mobius(1) == 1);
  CHECK(mobius(6) == 1);
  CHECK(mobius(30) == -1);
  CHECK(mobius(12) == 0);
  CHECK(radical(1) == 1);
  CHECK(radical(12) == 6);
  CHECK(divisors(12) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
  CHECK(divisors(1) == std::vector<std::uint64_t>{1});

  // phi is multiplicative; spot-check against a sieve-free identity
  // sum_{d | n} phi(d) = n.
  for (std::uint64_t n = 1; n <= 200; ++n) {
    std::uint64_t s = 0;
    for (auto d : divisors(n)) s += totient(d);
    CHECK(s == n);
  }
}

TEST_CASE("coprime_count frozen values") {
  CHECK(coprime_count(5, 1) == 11);
  CHECK(coprime_count(6, 6) == 4);
  CHECK(coprime_count(10, 4) == 10);
  CHECK(coprime_count(0, 1) == 1);
  CHECK(coprime_count(0, 2) == 0);  // p = 0 has gcd(0, 2) = 2
}

TEST_CASE("coprime_count matches brute force on the full stated range") {
  for (std::int64_t Q = 0; Q <= 200; ++Q)
    for (std::uint64_t g = 1; g <= 200; ++g)
      REQUIRE(coprime_count(Q, g) == coprime_count_brute(Q, g));
}

TEST_CASE("phi_m frozen values and modes") {
  IntVec q{{2, 4}};
  CHECK(phi_m(q, 2, PhiMode::joint) == 56);           // 9^2 - 5^2
  CHECK(phi_m(q, 2, PhiMode::componentwise) == 16);   // (2*floor(4/2))^2 classic pattern
  CHECK(phi_m(q, 1, PhiMode::joint) == phi_m(q, 1, PhiMode::componentwise));
  IntVec unit{{1, 7}};
  CHECK(phi_m(unit, 2) == 15 * 15);  // gcd 1: every numerator tuple counts
  CHECK_THROWS_AS(phi_m(IntVec{{0, 0}}, 1), std::domain_error);
  CHECK_THROWS_AS(vec_gcd(IntVec{{0, 0}}), std::domain_error);
}

TEST_CASE("phi_m matches brute force on the full stated range") {
  for (int n = 1; n <= 3; ++n) {
    std::vector<std::int64_t> comps(static_cast<std::size_t>(n), 0);
    while (true) {
      IntVec q{comps};
      if (!q.is_zero() && q.norm() <= 12) {
        for (int m = 1; m <= 2; ++m) {
          REQUIRE(phi_m(q, m, PhiMode::joint) == phi_m_brute(q, m, PhiMode::joint));
          REQUIRE(phi_m(q, m, PhiMode::componentwise) ==
                  phi_m_brute(q, m, PhiMode::componentwise));
        }
      }
      int i = n - 1;
      while (i >= 0 && comps[static_cast<std::size_t>(i)] == 12) {
        comps[static_cast<std::size_t>(i)] = 0;
        --i;
      }
      if (i < 0) break;
      ++comps[static_cast<std::size_t>(i)];
    }
  }
}

TEST_CASE("primitive vector stream") {
  auto vs = primitive_vectors(2, 2);
  std::vector<IntVec> expect{IntVec{{0, 1}}, IntVec{{1, 0}}, IntVec{{1, 1}},
                             IntVec{{1, 2}}, IntVec{{2, 1}}};
  CHECK(vs == expect);

  // Lexicographic order and primitivity, plus completeness vs a direct scan.
  auto vs3 = primitive_vectors(3, 4);
  for (std::size_t i = 0; i + 1 < vs3.size(); ++i) CHECK(vs3[i] < vs3[i + 1]);
  std::set<IntVec> seen(vs3.begin(), vs3.end());
  CHECK(seen.size() == vs3.size());
  std::size_t count = 0;
  for (std::int64_t a = 0; a <= 4; ++a)
    for (std::int64_t b = 0; b <= 4; ++b)
      for (std::int64_t c = 0; c <= 4; ++c) {
        IntVec v{{a, b, c}};
        if (v.is_zero()) continue;
        if (vec_gcd(v) == 1) {
          ++count;
          CHECK(seen.count(v) == 1);
        }
      }
  CHECK(count == vs3.size());
}

TEST_CASE("primitive_part round trip") {
  for (std::int64_t a = -6; a <= 6; ++a)
    for (std::int64_t b = -6; b <= 6; ++b) {
      if (a == 0 && b == 0) continue;
      IntVec q{{a, b}};
      auto d = primitive_part(q);
      CHECK(d.scale >= 1);
      CHECK(vec_gcd(d.direction) == 1);
      CHECK(d.scale * d.direction == q);
    }
}
