#include "doctest.h"

#include "diolab/psi.hpp"
#include "diolab/rng.hpp"

#include <cmath>
#include <map>

using namespace diolab;
using psi::CatlinBar;
using psi::PsiSpec;
using psi::ThresholdPart;

namespace {

Rat r(long n, long d) { return Rat(n, d); }

IntVec v1(std::int64_t a) { return IntVec{{a}}; }
IntVec v2(std::int64_t a, std::int64_t b) { return IntVec{{a, b}}; }

Rat exact(const Value& v) {
  REQUIRE(v.exact());
  return v.rat();
}

}  // namespace

TEST_CASE("power law evaluation") {
  auto p = PsiSpec::power_law(Rat(1), Rat(2));
  CHECK(exact(p.eval(v2(3, 4))) == r(1, 16));  // sup norm 4
  CHECK(exact(p.eval(v1(5))) == r(1, 25));
  CHECK(p.rational_valued());
  CHECK(!p.dim());
  CHECK(!p.support_norm());

  // tau = -1 grows linearly; c scales.
  auto growing = PsiSpec::power_law(r(1, 2), Rat(-1));
  CHECK(exact(growing.eval(v1(6))) == 3);

  // Fractional tau at a perfect power stays exact.
  auto half = PsiSpec::power_law(r(1, 2), r(1, 2));
  CHECK(exact(half.eval(v1(4))) == r(1, 4));
  CHECK(!half.rational_valued());

  // Elsewhere it is an enclosure around c |q|^(-1/2).
  Value irr = half.eval(v1(2));
  CHECK(!irr.exact());
  CHECK(std::abs(irr.approx() - 0.5 / std::sqrt(2.0)) < 1e-12);

  CHECK_THROWS_AS(PsiSpec::power_law(Rat(0), Rat(2)), std::domain_error);
  CHECK_THROWS_AS(p.eval(v1(0)), std::domain_error);
  CHECK_THROWS_AS(p.eval(v2(-1, 2)), std::domain_error);
}

TEST_CASE("radial and explicit tables") {
  auto rad = PsiSpec::radial_table({{2, r(1, 10)}, {4, Rat(1)}});
  CHECK(exact(rad.eval(v1(2))) == r(1, 10));
  CHECK(exact(rad.eval(v2(2, 1))) == r(1, 10));  // keyed by sup norm
  CHECK(exact(rad.eval(v1(3))) == 0);
  CHECK(rad.support_norm() == 4);
  CHECK(!rad.dim());
  CHECK_THROWS_AS(PsiSpec::radial_table({{0, Rat(1)}}), std::domain_error);
  CHECK_THROWS_AS(PsiSpec::radial_table({{2, Rat(-1)}}), std::domain_error);

  std::map<IntVec, Rat> tab;
  tab[v2(1, 2)] = r(1, 3);
  auto ex = PsiSpec::explicit_table(tab);
  CHECK(exact(ex.eval(v2(1, 2))) == r(1, 3));
  CHECK(exact(ex.eval(v2(2, 1))) == 0);  // exact key, not radius
  CHECK(ex.dim() == 2);
  CHECK(ex.support_norm() == 2);
  CHECK_THROWS_AS(ex.eval(v1(2)), std::domain_error);

  std::map<IntVec, Rat> bad;
  bad[v2(0, 0)] = Rat(1);
  CHECK_THROWS_AS(PsiSpec::explicit_table(bad), std::domain_error);
}

TEST_CASE("divisor-supported counterexample function") {
  auto cx = PsiSpec::ds_counterexample(6, r(1, 10));
  CHECK(exact(cx.eval(v1(3))) == r(1, 20));
  CHECK(exact(cx.eval(v1(6))) == r(1, 10));
  CHECK(exact(cx.eval(v1(4))) == 0);
  CHECK(cx.dim() == 1);
  CHECK(cx.support_norm() == 6);
  CHECK_THROWS_AS(cx.eval(v2(2, 3)), std::domain_error);
  CHECK_THROWS_AS(PsiSpec::ds_counterexample(6, Rat(0)), std::domain_error);
}

TEST_CASE("catlin supremum") {
  // Decaying power law: the sup sits at t = 1 whatever the truncation.
  auto p = PsiSpec::power_law(Rat(1), Rat(2));
  CatlinBar pb = psi::catlin_bar(p, v1(3), 1000);
  CHECK(exact(pb.value) == r(1, 9));
  CHECK(pb.witness_t == 1);
  CHECK(pb.exact_sup);

  // Growing power law: endpoint witness, truncation not exact.
  auto g = PsiSpec::power_law(Rat(1), Rat(-2));
  CatlinBar gb = psi::catlin_bar(g, v1(2), 5);
  CHECK(exact(gb.value) == 20);  // (5*2)^2 / 5
  CHECK(gb.witness_t == 5);
  CHECK(!gb.exact_sup);

  // Table: psi(2) = 1/10, psi(4) = 1 gives psi_bar(2) = 1/2 at t = 2.
  auto tab = PsiSpec::radial_table({{2, r(1, 10)}, {4, Rat(1)}});
  CatlinBar tb = psi::catlin_bar(tab, v1(2), 8);
  CHECK(exact(tb.value) == r(1, 2));
  CHECK(tb.witness_t == 2);
  CHECK(tb.exact_sup);  // support exhausted inside the range

  CatlinBar trunc = psi::catlin_bar(tab, v1(2), 1);
  CHECK(exact(trunc.value) == r(1, 10));
  CHECK(trunc.witness_t == 1);
  CHECK(!trunc.exact_sup);

  // The wrapper variant evaluates to the same number.
  auto wrapped = PsiSpec::catlin_transform(tab, 8);
  CHECK(exact(wrapped.eval(v1(2))) == r(1, 2));
  CHECK(wrapped.support_norm() == 4);
  CHECK(wrapped.rational_valued());
}

TEST_CASE("catlin supremum properties on random tables") {
  for (int trial = 0; trial < 40; ++trial) {
    std::map<std::int64_t, Rat> values;
    for (int k = 0; k < 12; ++k) {
      auto key = static_cast<std::int64_t>(
          1 + rng::below(static_cast<std::uint64_t>(trial), 51,
                         static_cast<std::uint64_t>(k), 0, 900));
      auto num = static_cast<std::int64_t>(
          rng::below(static_cast<std::uint64_t>(trial), 51,
                     static_cast<std::uint64_t>(k), 1, 50));
      values[key] = Rat(num, 37);
    }
    auto spec = PsiSpec::radial_table(values);
    for (std::int64_t q = 1; q <= 5; ++q) {
      for (std::int64_t t_max : {1, 3, 7, 50}) {
        CatlinBar bar = psi::catlin_bar(spec, v1(q), t_max);
        // Oracle: direct maximum over the truncation range.
        Rat best = 0;
        std::int64_t best_t = 1;
        for (std::int64_t t = 1; t <= t_max; ++t) {
          Value val = spec.eval(v1(t * q));
          Rat cand = val.rat() / t;
          if (cand > best) {
            best = cand;
            best_t = t;
          }
        }
        CHECK(exact(bar.value) == best);
        CHECK(bar.witness_t == best_t);
        // t = 1 is always in range: psi_bar >= psi.
        CHECK(exact(bar.value) >= spec.eval(v1(q)).rat());
      }
      // Monotone in the truncation parameter.
      Rat prev = 0;
      for (std::int64_t t_max = 1; t_max <= 12; ++t_max) {
        Rat cur = exact(psi::catlin_bar(spec, v1(q), t_max).value);
        CHECK(cur >= prev);
        prev = cur;
      }
    }
  }
}

TEST_CASE("threshold split") {
  // psi(4) = 10 exceeds the bound 4 / (2 phi(4)) = 1, so the large part
  // carries it and the small part vanishes there.
  auto tab = PsiSpec::radial_table({{4, Rat(10)}, {6, r(1, 5)}});
  auto [small, large] = psi::threshold_split(tab);
  CHECK(exact(small.eval(v1(4))) == 0);
  CHECK(exact(large.eval(v1(4))) == 10);
  CHECK(exact(small.eval(v1(6))) == r(1, 5));  // 1/5 <= 6/(2*2) = 3/2
  CHECK(exact(large.eval(v1(6))) == 0);
  CHECK(small.part() == ThresholdPart::small_part);
  CHECK(small.inner().kind() == PsiSpec::Kind::radial_table);

  // Everything <= 1/2 is small: d/(2 phi(d)) >= 1/2 always.
  auto low = PsiSpec::power_law(r(1, 2), Rat(2));
  auto [lo_small, lo_large] = psi::threshold_split(low);
  for (std::int64_t q = 1; q <= 40; ++q) {
    CHECK(exact(lo_large.eval(v1(q))) == 0);
    CHECK(exact(lo_small.eval(v1(q))) == exact(low.eval(v1(q))));
  }
}

TEST_CASE("threshold parts sum to the inner function") {
  auto rad = [](int trial, int k, int slot) {
    return static_cast<std::int64_t>(
        rng::below(static_cast<std::uint64_t>(trial), 52,
                   static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(slot),
                   30));
  };
  int checked = 0;
  for (int trial = 0; trial < 42; ++trial) {
    std::map<std::int64_t, Rat> values;
    for (int k = 1; k <= 30; ++k)
      values[k] = Rat(rad(trial, k, 7), 1 + rad(trial, k, 8));
    auto spec = PsiSpec::radial_table(values);
    auto [small, large] = psi::threshold_split(spec);
    for (std::int64_t a = 0; a <= 4; ++a)
      for (std::int64_t b = 0; b <= 4; ++b) {
        if (a == 0 && b == 0) continue;
        IntVec q = v2(a, b);
        Rat total = exact(small.eval(q)) + exact(large.eval(q));
        CHECK(total == exact(spec.eval(q)));
        // The small part obeys its defining cap at the gcd.
        Rat sm = exact(small.eval(q));
        std::int64_t g = arith::vec_gcd(q);
        Rat cap(g, 2 * static_cast<std::int64_t>(
                         arith::totient(static_cast<std::uint64_t>(g))));
        CHECK(sm <= cap);
        ++checked;
      }
  }
  CHECK(checked == 42 * 24);  // a thousand arguments and a few more
}

TEST_CASE("psi config round trips") {
  std::map<IntVec, Rat> tab;
  tab[v2(1, 2)] = r(1, 3);
  tab[v2(3, 1)] = Rat(2);
  std::vector<PsiSpec> specs = {
      PsiSpec::power_law(r(3, 2), r(-1, 2)),
      PsiSpec::radial_table({{2, r(1, 10)}, {4, Rat(1)}}),
      PsiSpec::explicit_table(tab),
      PsiSpec::ds_counterexample(30030, r(1, 10)),
      PsiSpec::catlin_transform(PsiSpec::radial_table({{2, r(1, 10)}, {4, Rat(1)}}), 16),
      PsiSpec::threshold_part(PsiSpec::power_law(Rat(1), Rat(1)),
                              ThresholdPart::large_part),
      PsiSpec::catlin_transform(
          PsiSpec::threshold_part(PsiSpec::ds_counterexample(12, r(1, 4)),
                                  ThresholdPart::small_part),
          5),
  };
  for (const auto& spec : specs) {
    PsiSpec back = PsiSpec::parse(spec.to_config());
    CHECK(back.kind() == spec.kind());
    CHECK(back.to_config() == spec.to_config());
    std::vector<IntVec> probes;
    if (spec.dim().value_or(1) == 1)
      probes = {v1(1), v1(2), v1(3), v1(5), v1(12), v1(30)};
    else
      probes = {v2(1, 2), v2(3, 1), v2(2, 2), v2(7, 4)};
    for (const IntVec& q : probes) {
      Value a = spec.eval(q);
      Value b = back.eval(q);
      if (a.exact()) {
        CHECK(exact(b) == a.rat());
      } else {
        CHECK(a.approx() == b.approx());
      }
    }
  }
}

TEST_CASE("psi config rejects malformed input") {
  CHECK_THROWS_AS(PsiSpec::parse("variant unknown_thing\n"), std::invalid_argument);
  CHECK_THROWS_AS(PsiSpec::parse("c 1\ntau 2\n"), std::domain_error);  // no variant
  CHECK_THROWS_AS(PsiSpec::parse("variant power_law\nc 1\n"), std::domain_error);
  CHECK_THROWS_AS(PsiSpec::parse("variant power_law\nc x\ntau 2\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(PsiSpec::parse("variant threshold_part\npart tiny\ninner {\n"
                                 "variant power_law\nc 1\ntau 2\n}\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(PsiSpec::parse("variant radial_table\nentry 2\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(config::parse("block {\nkey 1\n"), std::runtime_error);
  CHECK_THROWS_AS(config::parse("}\n"), std::runtime_error);
  CHECK_THROWS_AS(config::parse("naked\n"), std::runtime_error);
}

TEST_CASE("config tree parsing") {
  config::Node n = config::parse(
      "# leading comment\n"
      "alpha 3/4\n"
      "\n"
      "table {\n"
      "  entry 1 2   # trailing comment\n"
      "  entry 2 5/6\n"
      "}\n"
      "words one two three\n");
  CHECK(n.value_at("alpha") == "3/4");
  CHECK(n.value_at("words") == "one two three");
  CHECK(n.child_at("table").all("entry").size() == 2);
  CHECK(n.child_at("table").all("entry")[1]->value == "2 5/6");
  CHECK(config::to_rat(n.value_at("alpha")) == r(3, 4));
  CHECK(!n.has("missing"));
  CHECK_THROWS_AS(n.value_at("missing"), std::domain_error);
  CHECK_THROWS_AS(n.value_at("table"), std::domain_error);
  CHECK_THROWS_AS(n.child_at("alpha"), std::domain_error);

  // Serialization is the canonical form and parses back to itself.
  std::string canon = config::serialize(n);
  config::Node again = config::parse(canon);
  CHECK(config::serialize(again) == canon);

  CHECK(config::to_int("42") == 42);
  CHECK(config::to_int("-7") == -7);
  CHECK_THROWS_AS(config::to_int("9x"), std::invalid_argument);
  CHECK(config::to_bool("true"));
  CHECK_THROWS_AS(config::to_bool("yes"), std::invalid_argument);
}
