#include "doctest.h"

#include "diolab/torus_sets.hpp"
#include "oracles.hpp"

#include <numeric>

using namespace diolab;
using namespace diolab::torus_sets;

namespace {
Rat r(long n, long d) { return Rat(n, d); }
}  // namespace

TEST_CASE("approx_set_1d frozen examples") {
  ArcUnion a = approx_set_1d(5, r(1, 4), SetMode::coprime);
  CHECK(a.measure() == r(2, 5));
  CHECK(a.arcs().size() == 4);

  ArcUnion b = approx_set_1d(1, r(1, 4), SetMode::coprime);
  CHECK(b.measure() == r(1, 2));
  CHECK(b.arcs().size() == 2);  // one circle arc around 0, split at the seam
  CHECK(b.contains(r(0, 1)));

  CHECK(approx_set_1d(4, Rat(3), SetMode::plain).is_full());
  CHECK(approx_set_1d(7, Rat(0), SetMode::coprime).empty());
  CHECK_THROWS_AS(approx_set_1d(3, r(-1, 2), SetMode::plain), std::domain_error);
  CHECK_THROWS_AS(approx_set_1d(3, r(1, 2), SetMode::filtered), std::domain_error);
  CHECK_THROWS_AS(approx_set_1d(6, r(1, 4), SetMode::filtered,
                                std::vector<std::int64_t>{2}),
                  std::domain_error);

  // Filtered mode restricts to the given residues.
  ArcUnion f = approx_set_1d(6, r(1, 4), SetMode::filtered, std::vector<std::int64_t>{1});
  CHECK(f.measure() == r(1, 12));
  ArcUnion f2 = approx_set_1d(6, r(1, 4), SetMode::filtered, std::vector<std::int64_t>{1, 5});
  CHECK(f2 == approx_set_1d(6, r(1, 4), SetMode::coprime));
}

TEST_CASE("exact coprime measure formula on the stated grid") {
  for (std::int64_t d = 1; d <= 300; ++d) {
    std::int64_t phi = static_cast<std::int64_t>(arith::totient(static_cast<std::uint64_t>(d)));
    for (Rat eps : {r(1, 2), r(1, 3), r(1, 7), r(3, 8)}) {
      Rat expect = Rat(2 * phi) * eps / d;
      CHECK(approx_set_1d(d, eps, SetMode::coprime).measure() == expect);
    }
    // Upper bound holds for every radius, equality iff no merging.
    for (Rat eps : {r(3, 4), Rat(1), Rat(2)}) {
      Rat bound = Rat(2 * phi) * eps / d;
      CHECK(approx_set_1d(d, eps, SetMode::coprime).measure() <= std::min(Rat(1), bound));
    }
  }
}

TEST_CASE("separated numerator selection") {
  CHECK(select_separated_numerators(1) == std::vector<std::int64_t>{0});
  CHECK(select_separated_numerators(5) == std::vector<std::int64_t>{1, 3});
  CHECK(select_separated_numerators(12) == std::vector<std::int64_t>{1, 5});

  for (std::int64_t d = 1; d <= 1000; ++d) {
    auto kept = select_separated_numerators(d);
    std::int64_t phi = static_cast<std::int64_t>(arith::totient(static_cast<std::uint64_t>(d)));
    REQUIRE(!kept.empty());
    // Cardinality bound |P| >= phi/3 and pairwise circle gaps >= 1/phi.
    REQUIRE(3 * static_cast<std::int64_t>(kept.size()) >= phi);
    for (std::size_t i = 0; i < kept.size(); ++i) {
      CHECK(std::gcd(kept[i], d) == 1);
      for (std::size_t j = i + 1; j < kept.size(); ++j) {
        std::int64_t diff = kept[j] - kept[i];
        std::int64_t circ = std::min(diff, d - diff);
        REQUIRE(circ * phi >= d);
      }
    }
  }
}

TEST_CASE("ball families and concentric scaling") {
  auto f = BallFamily1D::make({r(0, 1), r(1, 2)}, r(1, 8), true);
  auto g = scale_concentric(f, r(1, 2));
  CHECK(g.radius == r(1, 16));
  CHECK(g.centers == f.centers);
  CHECK(g.disjoint);
  CHECK(scale_concentric(f, Rat(1)).radius == f.radius);
  CHECK_THROWS_AS(scale_concentric(f, Rat(0)), std::domain_error);
  CHECK_THROWS_AS(scale_concentric(f, Rat(2)), std::domain_error);
  CHECK_THROWS_AS(BallFamily1D::make({r(0, 1), r(1, 16)}, r(1, 8), true), std::domain_error);
  // Touching open balls are disjoint.
  auto touch = BallFamily1D::make({r(0, 1), r(1, 4)}, r(1, 8), true);
  CHECK(touch.to_arc_union().measure() == r(1, 2));
}

TEST_CASE("concentric scaling dilation inequality, exact") {
  // For disjoint families I, J and sigma in (0,1]:
  // |(sigma I) cap (sigma J)| <= sigma * |I cap J|.
  int cases = 0;
  for (std::uint64_t it = 0; it < 400; ++it) {
    std::uint64_t den = 64;
    std::uint64_t k1 = 1 + rng::below(3030, 5, it, 0, 4);
    std::uint64_t k2 = 1 + rng::below(3030, 5, it, 1, 4);
    // Disjoint centers on a coarse grid: radius 1/(4*max(k)) spacing-safe.
    std::vector<Rat> c1, c2;
    for (std::uint64_t i = 0; i < k1; ++i)
      c1.push_back(r(static_cast<long>((i * den) / k1), static_cast<long>(den)));
    for (std::uint64_t i = 0; i < k2; ++i)
      c2.push_back(r(static_cast<long>((i * den + 3) / k2), static_cast<long>(den)));
    Rat rad1(1, static_cast<long>(4 * k1));
    Rat rad2(1, static_cast<long>(4 * k2));
    auto I = BallFamily1D::make(c1, rad1, true);
    auto J = BallFamily1D::make(c2, rad2, true);
    std::uint64_t num = 1 + rng::below(3030, 5, it, 2, 16);
    Rat sigma(static_cast<long>(num), 16);
    auto Is = scale_concentric(I, sigma);
    auto Js = scale_concentric(J, sigma);
    Rat lhs = intersect(Is.to_arc_union(), Js.to_arc_union()).measure();
    Rat rhs = sigma * intersect(I.to_arc_union(), J.to_arc_union()).measure();
    REQUIRE(lhs <= rhs);
    ++cases;
  }
  CHECK(cases == 400);
}

TEST_CASE("stripe independence estimate") {
  // Axis stripes: a literal product set.
  auto axis = stripe_independence_estimate(IntVec{{1, 0}}, IntVec{{0, 1}},
                                           {Rat(0), Rat(0)}, {Rat(0), Rat(0)}, r(1, 4),
                                           r(1, 4), 20000, 11, 2);
  CHECK(axis.product == r(1, 4));
  CHECK(std::abs(axis.estimate - 0.25) <= 4 * axis.stderr_);

  // Diagonal pair.
  auto diag = stripe_independence_estimate(IntVec{{1, 1}}, IntVec{{1, -1}},
                                           {Rat(0), Rat(0)}, {Rat(0), Rat(0)}, r(1, 8),
                                           r(1, 8), 20000, 12, 2);
  CHECK(diag.product == r(1, 16));
  CHECK(std::abs(diag.estimate - 1.0 / 16) <= 4 * diag.stderr_);

  // Width 1 makes the first stripe the whole torus.
  auto full = stripe_independence_estimate(IntVec{{1, 0}}, IntVec{{0, 1}},
                                           {Rat(0), Rat(0)}, {Rat(0), Rat(0)}, Rat(1),
                                           r(1, 3), 5000, 13, 1);
  CHECK(full.product == r(2, 3));
  CHECK(full.estimate <= 1.0);

  // Determinism across thread counts.
  auto t1 = stripe_independence_estimate(IntVec{{1, 2}}, IntVec{{2, 1}}, {r(1, 3), Rat(0)},
                                         {Rat(0), r(1, 5)}, r(1, 6), r(1, 7), 9999, 99, 1);
  auto t8 = stripe_independence_estimate(IntVec{{1, 2}}, IntVec{{2, 1}}, {r(1, 3), Rat(0)},
                                         {Rat(0), r(1, 5)}, r(1, 6), r(1, 7), 9999, 99, 8);
  CHECK(t1.estimate == t8.estimate);

  // Dependent directions are rejected.
  CHECK_THROWS_AS(stripe_independence_estimate(IntVec{{1, 2}}, IntVec{{2, 4}},
                                               {Rat(0), Rat(0)}, {Rat(0), Rat(0)},
                                               r(1, 4), r(1, 4), 100, 1, 1),
                  std::domain_error);
}
