#include "doctest.h"

#include "diolab/series.hpp"

#include <cmath>
#include <map>

using namespace diolab;
using psi::PsiSpec;
using series::VerdictHint;

namespace {

Rat r(long n, long d) { return Rat(n, d); }

IntVec v2(std::int64_t a, std::int64_t b) { return IntVec{{a, b}}; }

Rat exact(const Value& v) {
  REQUIRE(v.exact());
  return v.rat();
}

PsiSpec harmonic() { return PsiSpec::power_law(Rat(1), Rat(1)); }
PsiSpec inverse_square() { return PsiSpec::power_law(Rat(1), Rat(2)); }
PsiSpec zero_spec() { return PsiSpec::radial_table({}); }

}  // namespace

TEST_CASE("coprimality-weighted sum") {
  // n = 1: sum of phi(q)/q^2 up to 4 is 1 + 1/4 + 2/9 + 1/8.
  auto rep = series::ds_sum(harmonic(), 1, 1, 4);
  CHECK(exact(rep.partial_sum) == r(115, 72));
  CHECK(rep.term_count == 4);
  REQUIRE(rep.cutoffs.size() == 1);
  CHECK(rep.cutoffs[0].first == "Q");
  CHECK(rep.cutoffs[0].second == 4);
  // Shells 3..4 contribute 2/9 + 1/8.
  CHECK(exact(rep.last_block_sum) == r(25, 72));

  // Divisor-supported function: phi(q) eta / N over the divisors of 6.
  auto cx = PsiSpec::ds_counterexample(6, r(1, 10));
  auto crep = series::ds_sum(cx, 1, 1, 6);
  CHECK(exact(crep.partial_sum) == r(1, 10));
  CHECK(crep.term_count == 4);
  CHECK(exact(crep.last_block_sum) == r(1, 30));  // only q = 6 above 3

  // Two dimensions, hand evaluation over the eight points of norm <= 2.
  CHECK(exact(series::ds_sum(inverse_square(), 2, 1, 2).partial_sum) == r(31, 8));
  CHECK(exact(series::ds_sum(inverse_square(), 2, 2, 2).partial_sum) == r(203, 64));

  CHECK(exact(series::ds_sum(zero_spec(), 1, 1, 50).partial_sum) == 0);
  CHECK(series::ds_sum(zero_spec(), 1, 1, 50).term_count == 0);
  CHECK_THROWS_AS(series::ds_sum(harmonic(), 1, 1, 0), std::domain_error);
  CHECK_THROWS_AS(series::ds_sum(harmonic(), 1, 0, 4), std::domain_error);
}

TEST_CASE("coprimality-weighted sum is monotone in the cutoff") {
  Rat prev = 0;
  for (std::int64_t Q : {1, 2, 5, 9, 17, 33}) {
    Rat cur = exact(series::ds_sum(harmonic(), 1, 1, Q).partial_sum);
    CHECK(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("factored form of the weighted sum") {
  // n = 1 collapses to the same single-direction sum.
  auto direct = series::ds_sum(harmonic(), 1, 1, 20);
  auto fact = series::ds_sum_factored(harmonic(), 1, 1, 1, 20);
  CHECK(exact(fact.partial_sum) == exact(direct.partial_sum));
  REQUIRE(fact.cutoffs.size() == 2);
  CHECK(fact.cutoffs[0].first == "H_prim");
  CHECK(fact.cutoffs[1].first == "D");

  // Bounded support: cutoffs (H, D) = (4, 4) cover exactly the terms of the
  // direct sum at Q = 4, so the two agree term for term.
  auto tab = PsiSpec::radial_table({{2, r(1, 3)}, {4, r(1, 5)}});
  CHECK(exact(series::ds_sum_factored(tab, 2, 1, 4, 4).partial_sum) ==
        exact(series::ds_sum(tab, 2, 1, 4).partial_sum));
  CHECK(exact(series::ds_sum_factored(tab, 2, 3, 4, 4).partial_sum) ==
        exact(series::ds_sum(tab, 2, 3, 4).partial_sum));

  // In general the factored cutoffs cover more scale-direction pairs.
  Rat f = exact(series::ds_sum_factored(inverse_square(), 2, 1, 6, 6).partial_sum);
  Rat d = exact(series::ds_sum(inverse_square(), 2, 1, 6).partial_sum);
  CHECK(f >= d);

  CHECK(exact(series::ds_sum_factored(zero_spec(), 2, 1, 5, 5).partial_sum) == 0);
}

TEST_CASE("aggregated radius") {
  // n = 1: the only primitive direction is (1), so the radius is psi(d).
  for (std::int64_t d : {1, 2, 7, 30}) {
    auto rep = series::capital_psi(harmonic(), 1, 1, d, 3);
    CHECK(exact(rep.value) == Rat(1, d));
    REQUIRE(rep.sum_tail_bound.has_value());
    CHECK(exact(*rep.sum_tail_bound) == 0);
    CHECK(exact(*rep.value_upper) == Rat(1, d));
    CHECK(!rep.tail_unbounded);
  }
  // The root stays exact when the sum is a perfect power.
  auto sq = series::capital_psi(harmonic(), 1, 2, 5, 10);
  CHECK(exact(sq.value) == r(1, 5));

  // Finite support in two dimensions: only the direction (1,2) contributes.
  std::map<IntVec, Rat> tab;
  tab[v2(1, 2)] = r(1, 3);
  auto ex = PsiSpec::explicit_table(tab);
  auto one = series::capital_psi(ex, 2, 1, 1, 4);
  CHECK(exact(one.value) == r(1, 3));
  CHECK(exact(*one.sum_tail_bound) == 0);  // support exhausted
  auto two = series::capital_psi(ex, 2, 1, 2, 4);
  CHECK(exact(two.value) == 0);

  // Perfect square across two directions.
  std::map<IntVec, Rat> pyth;
  pyth[v2(1, 0)] = r(3, 5);
  pyth[v2(0, 1)] = r(4, 5);
  auto rt = series::capital_psi(PsiSpec::explicit_table(pyth), 2, 2, 1, 1);
  CHECK(exact(rt.value) == 1);

  // Power law with tau m > n: integral tail bound n 2^(n-1) H^(n - tau m)
  // / (tau m - n) at c = d = 1 gives 4/H here.
  auto cube = PsiSpec::power_law(Rat(1), Rat(3));
  auto pl = series::capital_psi(cube, 2, 1, 1, 10);
  Rat brute = 0;
  for (const IntVec& qp : arith::primitive_vectors(2, 10))
    brute += Rat(1) / rat_pow(Rat(qp.norm()), 3);
  CHECK(exact(pl.value) == brute);
  REQUIRE(pl.sum_tail_bound.has_value());
  CHECK(exact(*pl.sum_tail_bound) == r(2, 5));
  CHECK(exact(*pl.value_upper) == brute + r(2, 5));

  // tau m <= n: the omitted tail genuinely diverges.
  auto flat = series::capital_psi(harmonic(), 2, 1, 1, 10);
  CHECK(flat.tail_unbounded);
  CHECK(!flat.sum_tail_bound.has_value());

  CHECK_THROWS_AS(series::capital_psi(harmonic(), 1, 1, 0, 3), std::domain_error);
}

TEST_CASE("catlin-weighted sum") {
  // Decaying power law: the transform is the identity, so at n = m = 1 the
  // terms are Phi_1(q) psi(q) / q with Phi_1(q) = #{|p| <= q coprime to q}.
  auto rep = series::catlin_sum(inverse_square(), 1, 1, 3, 10);
  CHECK(exact(rep.partial_sum) == r(367, 108));  // 3 + 1/4 + 4/27
  CHECK(rep.term_count == 3);
  REQUIRE(rep.cutoffs.size() == 2);
  CHECK(rep.cutoffs[1].first == "t_max");

  CHECK(exact(series::catlin_sum(zero_spec(), 1, 1, 20, 5).partial_sum) == 0);
  CHECK_THROWS_AS(series::catlin_sum(harmonic(), 1, 1, 5, 0), std::domain_error);

  // A table whose mass sits at 4 lifts the q = 2 term through t = 2.
  auto tab = PsiSpec::radial_table({{4, Rat(1)}});
  auto lifted = series::catlin_sum(tab, 1, 1, 4, 4);
  // psi_bar: q=1 -> 1/4 (t=4), q=2 -> 1/2 (t=2), q=4 -> 1; terms
  // Phi(1)*1/4 + Phi(2)*(1/4) + Phi(4)*(1/4) with Phi = 3, 2, 4.
  CHECK(exact(lifted.partial_sum) == Rat(3) * r(1, 4) + Rat(2) * r(1, 4) + Rat(4) * r(1, 4));
}

TEST_CASE("plain, linear-forms, and lattice sums") {
  // Harmonic partial sum.
  auto k = series::khintchine_sum(harmonic(), 1, 4);
  CHECK(exact(k.partial_sum) == r(25, 12));
  CHECK(k.term_count == 4);

  // Divisor-sum identity: sum of psi over q <= N is eta sigma(N) / N.
  auto cx = PsiSpec::ds_counterexample(30030, r(1, 10));
  auto ks = series::khintchine_sum(cx, 1, 30030);
  CHECK(exact(ks.partial_sum) == r(1152, 3575));  // (1/10) * 96768/30030
  CHECK(ks.term_count == 64);  // 2^6 divisors

  // Height-weighted sum q^(n-1) psi(q)^m: the classical display.
  CHECK(exact(series::kg_sum(inverse_square(), 2, 1, 3).partial_sum) == r(11, 6));
  // With m = 2 the same data gives 1 + 1/8 + 1/27.
  CHECK(exact(series::kg_sum(inverse_square(), 2, 2, 3).partial_sum) == r(251, 216));

  // Orthant lattice sum of psi^m.
  CHECK(exact(series::bv_sum(inverse_square(), 2, 1, 2).partial_sum) == r(17, 4));
  CHECK(exact(series::bv_sum(zero_spec(), 2, 1, 9).partial_sum) == 0);

  // Radial requirement: a dimension-pinned spec is rejected.
  std::map<IntVec, Rat> tab;
  tab[v2(1, 2)] = r(1, 3);
  auto pinned = PsiSpec::explicit_table(tab);
  CHECK_THROWS_AS(series::khintchine_sum(pinned, 1, 5), std::domain_error);
  CHECK_THROWS_AS(series::kg_sum(pinned, 2, 1, 5), std::domain_error);
}

TEST_CASE("dimension-function sums") {
  // s = 1/2 on psi(q) = 1/q: every factor is a perfect square, giving the
  // exact totient sum 1 + 1/2 + 2/3.
  auto h = series::hausdorff_ds_sum(harmonic(), 1, 1, r(1, 2), 3);
  CHECK(exact(h.partial_sum) == r(13, 6));

  // s = m reproduces the plain weighted sum term by term.
  for (int m = 1; m <= 3; ++m) {
    auto a = series::hausdorff_ds_sum(harmonic(), 1, m, Rat(m), 30);
    auto b = series::ds_sum(harmonic(), 1, m, 30);
    CHECK(exact(a.partial_sum) == exact(b.partial_sum));
  }
  auto a2 = series::hausdorff_ds_sum(inverse_square(), 2, 2, Rat(2), 6);
  auto b2 = series::ds_sum(inverse_square(), 2, 2, 6);
  CHECK(exact(a2.partial_sum) == exact(b2.partial_sum));

  // Catlin variant at s = m matches the catlin sum.
  auto ca = series::hausdorff_catlin_sum(inverse_square(), 1, 1, Rat(1), 5, 8);
  auto cb = series::catlin_sum(inverse_square(), 1, 1, 5, 8);
  CHECK(exact(ca.partial_sum) == exact(cb.partial_sum));

  CHECK(exact(series::hausdorff_ds_sum(zero_spec(), 1, 1, r(1, 2), 10).partial_sum) == 0);
  CHECK_THROWS_AS(series::hausdorff_ds_sum(harmonic(), 1, 1, Rat(0), 10),
                  std::domain_error);
  CHECK_THROWS_AS(series::hausdorff_catlin_sum(harmonic(), 1, 1, r(-1, 2), 10, 4),
                  std::domain_error);
}

TEST_CASE("trend hints on known series") {
  // Divergent log-type growth.
  auto div = series::ds_sum(harmonic(), 1, 1, 2048);
  CHECK(div.verdict_hint == VerdictHint::diverging_trend);
  // Convergent: the blocks decay geometrically.
  auto conv = series::ds_sum(inverse_square(), 1, 1, 2048);
  CHECK(conv.verdict_hint == VerdictHint::converging_trend);
  // Identically zero.
  CHECK(series::ds_sum(zero_spec(), 1, 1, 64).verdict_hint ==
        VerdictHint::converging_trend);
  // A finite-support function is eventually flat.
  auto cx = PsiSpec::ds_counterexample(6, r(1, 10));
  CHECK(series::ds_sum(cx, 1, 1, 4096).verdict_hint ==
        VerdictHint::converging_trend);
  // Too little data to call.
  CHECK(series::ds_sum(harmonic(), 1, 1, 4).verdict_hint ==
        VerdictHint::inconclusive);

  CHECK(series::to_string(VerdictHint::diverging_trend) == "diverging-trend");
}

TEST_CASE("irrational power laws stay enclosed") {
  // tau = 1/2: partial sums come back as enclosures with a stated error.
  auto spec = PsiSpec::power_law(Rat(1), r(1, 2));
  auto rep = series::khintchine_sum(spec, 1, 20);
  CHECK(!rep.partial_sum.exact());
  double est = rep.partial_sum.approx();
  double err = rep.partial_sum.abs_error();
  // Direct double summation for comparison.
  double ref = 0;
  for (int q = 1; q <= 20; ++q) ref += 1.0 / std::sqrt(static_cast<double>(q));
  CHECK(std::abs(est - ref) <= err + 1e-9);
  CHECK(err < 1e-12);

  // Determinism: the fixed summation tree gives identical enclosures.
  auto again = series::khintchine_sum(spec, 1, 20);
  CHECK(again.partial_sum.approx() == est);
  CHECK(again.partial_sum.abs_error() == err);
}
