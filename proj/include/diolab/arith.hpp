#pragma once

#include "diolab/numeric.hpp"

#include <cstdint>
#include <map>
#include <type_traits>
#include <vector>

namespace diolab {

/// Small integer vector (a lattice point q in Z^n). Components fit in 64 bits;
/// every quantity derived from them is arbitrary precision.
struct IntVec {
  std::vector<std::int64_t> c;

  IntVec() = default;
  explicit IntVec(std::vector<std::int64_t> comps) : c(std::move(comps)) {}

  int dim() const { return static_cast<int>(c.size()); }
  bool is_zero() const;
  /// Sup norm max|c_i|.
  std::int64_t norm() const;
  bool nonnegative() const;

  bool operator==(const IntVec& o) const { return c == o.c; }
  bool operator!=(const IntVec& o) const { return c != o.c; }
  /// Lexicographic; used for deterministic ordering and map keys.
  bool operator<(const IntVec& o) const { return c < o.c; }
};

IntVec operator*(std::int64_t s, const IntVec& v);

std::string to_string(const IntVec& v);

namespace arith {

/// gcd of |components|; throws std::domain_error on the zero vector.
std::int64_t vec_gcd(const IntVec& v);

struct PrimitiveDecomposition {
  std::int64_t scale;  // gcd, >= 1
  IntVec direction;    // primitive: vec_gcd(direction) == 1
};

/// q = scale * direction with direction primitive. Signs stay on direction.
PrimitiveDecomposition primitive_part(const IntVec& q);

/// Prime factorization by trial division, ascending primes.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

std::uint64_t totient(std::uint64_t n);

/// Moebius function; 0 when n has a squared prime factor.
int mobius(std::uint64_t n);

/// Product of the distinct primes dividing n; radical(1) = 1.
std::uint64_t radical(std::uint64_t n);

/// All divisors of n, ascending.
std::vector<std::uint64_t> divisors(std::uint64_t n);

/// #{ p in [-Q, Q] : gcd(p, g) = 1 }, counted by Moebius inversion over the
/// divisors of radical(g). Requires Q >= 0, g >= 1.
Int coprime_count(std::int64_t Q, std::uint64_t g);

enum class PhiMode { joint, componentwise };

/// Number of admissible numerator tuples p in Z^m for the direction q:
///   joint          #{ p : |p_j| <= |q|, gcd(p_1, ..., p_m, gcd(q)) = 1 }
///   componentwise  #{ p : |p_j| <= |q|, gcd(p_j, gcd(q)) = 1 for every j }
/// Requires q nonzero and m >= 1.
Int phi_m(const IntVec& q, int m, PhiMode mode = PhiMode::joint);

/// Streams the primitive vectors of the closed nonnegative orthant box
/// [0, H]^n \ {0} in lexicographic order. Re-creatable from (n, H); consumers
/// may partition work by the running index.
class PrimitiveVectors {
 public:
  PrimitiveVectors(int n, std::int64_t H);
  /// Advances to the next primitive vector; false when exhausted.
  bool next(IntVec& out);

 private:
  int n_;
  std::int64_t H_;
  std::vector<std::int64_t> cur_;
  bool done_;
  bool started_;
  bool advance_raw();
};

/// Materialized stream, for desk-scale H.
std::vector<IntVec> primitive_vectors(int n, std::int64_t H);

/// Visits every nonzero point of [0, Q]^n in lexicographic order. A callback
/// returning bool stops the walk on false; a void callback sees every point.
template <typename Fn>
void for_each_orthant(int n, std::int64_t Q, Fn&& fn) {
  IntVec q;
  q.c.assign(static_cast<std::size_t>(n), 0);
  for (;;) {
    int i = n - 1;
    while (i >= 0 && q.c[static_cast<std::size_t>(i)] == Q) {
      q.c[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) return;
    ++q.c[static_cast<std::size_t>(i)];
    if constexpr (std::is_void_v<std::invoke_result_t<Fn&, const IntVec&>>) {
      fn(static_cast<const IntVec&>(q));
    } else {
      if (!fn(static_cast<const IntVec&>(q))) return;
    }
  }
}

}  // namespace arith
}  // namespace diolab
