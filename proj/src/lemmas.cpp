#include "diolab/lemmas.hpp"

#include "diolab/measures.hpp"
#include "diolab/montecarlo.hpp"
#include "diolab/rng.hpp"
#include "diolab/series.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

namespace diolab::lemmas {

using arith::totient;
using measures::measure_A;
using psi::PsiSpec;
using torus_sets::ApproxSet;
using torus_sets::ArcUnion;
using torus_sets::BallFamily1D;
using torus_sets::SetMode;

namespace {

ApproxSet cop1(std::int64_t d, Rat eps) {
  return ApproxSet{1, 1, IntVec{{d}}, std::move(eps), SetMode::coprime,
                   std::nullopt};
}

std::string rs(const Rat& r) { return rat_to_string(r); }

/// Exact coprime-filtered measure law: 2 phi(d) eps / d whenever the arcs
/// stay disjoint (eps <= 1/2).
CheckResult check_measure_law() {
  CheckResult c{"exact-measure-law", true, ""};
  const Rat epss[] = {Rat(1, 8), Rat(1, 4), Rat(1, 2)};
  for (std::int64_t d = 1; d <= 60 && c.pass; ++d)
    for (const Rat& eps : epss) {
      Rat phi = Rat(static_cast<std::int64_t>(totient(static_cast<std::uint64_t>(d))));
      Rat want = Rat(2 * phi * eps / d);
      Rat got = measure_A(cop1(d, eps));
      if (got != want) {
        c.pass = false;
        c.detail = "d=" + std::to_string(d) + " eps=" + rs(eps) + " got " + rs(got) +
                   " want " + rs(want);
        break;
      }
    }
  if (c.pass) c.detail = "d <= 60, eps in {1/8, 1/4, 1/2}";
  return c;
}

/// (phi(d) eps / d)^m <= measure <= (2 phi(d) eps / d)^m below the threshold
/// radius.
CheckResult check_sandwich(std::uint64_t seed) {
  CheckResult c{"measure-sandwich", true, ""};
  for (std::uint64_t i = 0; i < 50 && c.pass; ++i) {
    auto d = static_cast<std::int64_t>(1 + rng::below(seed, 81, i, 0, 40));
    int m = 1 + static_cast<int>(rng::below(seed, 81, i, 1, 3));
    auto phi = static_cast<std::int64_t>(totient(static_cast<std::uint64_t>(d)));
    // eps = u/16 * d/(2 phi), u in 1..16, stays within the hypothesis.
    Rat eps = Rat(static_cast<std::int64_t>(1 + rng::below(seed, 81, i, 2, 16)) * d,
                  32 * phi);
    ApproxSet s = cop1(d, eps);
    s.m = m;
    Rat mid = measure_A(s);
    Rat lowb = measures::lower_bound_measure(d, eps, m);
    Rat high = rat_pow(Rat(2 * phi * eps / d), static_cast<unsigned>(m));
    if (!(lowb <= mid && mid <= high)) {
      c.pass = false;
      c.detail = "d=" + std::to_string(d) + " m=" + std::to_string(m) +
                 " eps=" + rs(eps);
    }
  }
  if (c.pass) c.detail = "50 random (d, m, eps) triples";
  return c;
}

/// The exact measure depends on the direction only through gcd(q).
CheckResult check_direction_invariance(std::uint64_t seed) {
  CheckResult c{"direction-invariance", true, ""};
  for (std::uint64_t i = 0; i < 10 && c.pass; ++i) {
    auto d = static_cast<std::int64_t>(1 + rng::below(seed, 82, i, 0, 30));
    Rat eps(static_cast<std::int64_t>(1 + rng::below(seed, 82, i, 1, 12)), 8);
    std::optional<Rat> ref;
    for (std::uint64_t k = 0; k < 10; ++k) {
      int n = 2 + static_cast<int>(rng::below(seed, 82, i, 10 + 4 * k, 2));
      std::vector<std::int64_t> comps;
      for (int t = 0; t < n; ++t)
        comps.push_back(static_cast<std::int64_t>(
            rng::below(seed, 82, i, 11 + 4 * k + static_cast<std::uint64_t>(t), 7)));
      if (std::all_of(comps.begin(), comps.end(), [](auto v) { return v == 0; }))
        comps[0] = 1;
      std::int64_t g = 0;
      for (auto v : comps) g = std::gcd(g, v);
      for (auto& v : comps) v = d * (v / g);
      ApproxSet s{n, 1, IntVec{comps}, eps, SetMode::coprime, std::nullopt};
      Rat got = measure_A(s);
      if (!ref) {
        ref = got;
      } else if (got != *ref) {
        c.pass = false;
        c.detail = "d=" + std::to_string(d) + " eps=" + rs(eps) +
                   " direction-dependent measure";
        break;
      }
    }
  }
  if (c.pass) c.detail = "10 scales x 10 primitive directions";
  return c;
}

/// Concentric shrinking of two disjoint families never grows the overlap
/// faster than the scale: Leb(sI cap sJ) <= s Leb(I cap J).
CheckResult check_dilation(std::uint64_t seed) {
  CheckResult c{"ball-dilation", true, ""};
  for (std::uint64_t i = 0; i < 40 && c.pass; ++i) {
    auto mk = [&](std::uint64_t off) {
      auto k = static_cast<std::int64_t>(2 + rng::below(seed, 83, i, off, 4));
      auto shift = static_cast<std::int64_t>(rng::below(seed, 83, i, off + 1, 8));
      std::vector<Rat> centers;
      for (std::int64_t j = 0; j < k; ++j)
        centers.push_back(rat_mod1(Rat(8 * j + shift, 8 * k)));
      Rat radius(1, 2 * k * static_cast<std::int64_t>(
                            1 + rng::below(seed, 83, i, off + 2, 3)));
      return BallFamily1D::make(std::move(centers), radius, true);
    };
    BallFamily1D I = mk(0);
    BallFamily1D J = mk(10);
    Rat sigma(static_cast<std::int64_t>(1 + rng::below(seed, 83, i, 20, 7)),
              static_cast<std::int64_t>(7 + rng::below(seed, 83, i, 21, 5)));
    Rat before = intersect(I.to_arc_union(), J.to_arc_union()).measure();
    Rat after = intersect(scale_concentric(I, sigma).to_arc_union(),
                          scale_concentric(J, sigma).to_arc_union())
                    .measure();
    if (after > Rat(sigma * before)) {
      c.pass = false;
      c.detail = "sigma=" + rs(sigma) + " overlap grew from " + rs(before) + " to " +
                 rs(after);
    }
  }
  if (c.pass) c.detail = "40 random disjoint family pairs";
  return c;
}

/// (sum mu)^2 / sum mu_pair lower-bounds the union; equality for identical
/// and for disjoint families.
CheckResult check_union_lower_bound(std::uint64_t seed) {
  CheckResult c{"union-lower-bound", true, ""};
  for (std::uint64_t i = 0; i < 40 && c.pass; ++i) {
    auto k = static_cast<std::size_t>(2 + rng::below(seed, 84, i, 0, 5));
    std::vector<ArcUnion> sets;
    for (std::size_t s = 0; s < k; ++s) {
      std::vector<ArcUnion::Arc> raw;
      auto arcs = 1 + rng::below(seed, 84, i, 10 + 3 * s, 3);
      for (std::uint64_t a = 0; a < arcs; ++a) {
        Rat lo(static_cast<std::int64_t>(
                   rng::below(seed, 84, i, 100 + 10 * s + 2 * a, 48)),
               48);
        Rat len(static_cast<std::int64_t>(
                    1 + rng::below(seed, 84, i, 101 + 10 * s + 2 * a, 6)),
                48);
        raw.emplace_back(lo, Rat(lo + len));
      }
      sets.push_back(ArcUnion::from_raw(raw));
    }
    std::vector<Rat> mu;
    std::vector<std::vector<Rat>> mu_pair(k, std::vector<Rat>(k));
    ArcUnion all;
    for (std::size_t a = 0; a < k; ++a) {
      mu.push_back(sets[a].measure());
      all = unite(all, sets[a]);
      for (std::size_t b = 0; b < k; ++b)
        mu_pair[a][b] = intersect(sets[a], sets[b]).measure();
    }
    Rat total(0);
    for (const Rat& v : mu) total += v;
    if (total == 0) continue;
    Rat bound = measures::chung_erdos_bound(mu, mu_pair);
    if (bound > all.measure()) {
      c.pass = false;
      c.detail = "bound " + rs(bound) + " exceeds union " + rs(all.measure());
    }
  }
  // Tightness: identical sets and disjoint sets both meet the bound exactly.
  ArcUnion u = ArcUnion::from_raw({{Rat(0), Rat(1, 4)}});
  std::vector<Rat> mu{u.measure(), u.measure()};
  std::vector<std::vector<Rat>> mp{{u.measure(), u.measure()},
                                   {u.measure(), u.measure()}};
  if (measures::chung_erdos_bound(mu, mp) != u.measure()) {
    c.pass = false;
    c.detail = "identical-family equality failed";
  }
  ArcUnion v = ArcUnion::from_raw({{Rat(1, 2), Rat(2, 3)}});
  std::vector<Rat> mu2{u.measure(), v.measure()};
  std::vector<std::vector<Rat>> mp2{{u.measure(), Rat(0)}, {Rat(0), v.measure()}};
  if (measures::chung_erdos_bound(mu2, mp2) != unite(u, v).measure()) {
    c.pass = false;
    c.detail = "disjoint-family equality failed";
  }
  if (c.pass) c.detail = "40 random families plus tightness cases";
  return c;
}

/// A pair with positive exact overlap must have a true indicator.
CheckResult check_overlap_indicator() {
  CheckResult c{"overlap-indicator", true, ""};
  std::map<std::int64_t, Rat> Psi;
  for (std::int64_t d = 1; d <= 40; ++d) Psi[d] = Rat(1, 4 * d);
  for (const auto& rep : measures::overlap_ratio_scan(Psi, 40)) {
    if (rep.lhs > 0 && !rep.indicator) {
      c.pass = false;
      c.detail = "pair (" + std::to_string(rep.k) + ", " + std::to_string(rep.l) +
                 ") has positive overlap with a false indicator";
      break;
    }
  }
  if (c.pass) c.detail = "Psi(d) = 1/(4d), pairs up to 40";
  return c;
}

/// The truncated transform dominates every sampled quotient psi(t q)/t.
CheckResult check_transform_dominates(std::uint64_t seed) {
  CheckResult c{"transform-dominates", true, ""};
  for (std::uint64_t i = 0; i < 20 && c.pass; ++i) {
    std::map<std::int64_t, Rat> table;
    for (int e = 0; e < 4; ++e) {
      auto key = static_cast<std::int64_t>(
          1 + rng::below(seed, 85, i, static_cast<std::uint64_t>(2 * e), 24));
      table[key] = Rat(
          static_cast<std::int64_t>(rng::below(seed, 85, i, static_cast<std::uint64_t>(2 * e + 1), 5)),
          static_cast<std::int64_t>(1 + rng::below(seed, 85, i, static_cast<std::uint64_t>(20 + e), 6)));
    }
    auto spec = PsiSpec::radial_table(table);
    for (std::int64_t q = 1; q <= 4 && c.pass; ++q) {
      auto bar = psi::catlin_bar(spec, IntVec{{q}}, 8);
      for (std::int64_t t = 1; t <= 8; ++t) {
        Rat quotient = Rat(spec.eval(IntVec{{t * q}}).rat() / t);
        if (bar.value.rat() < quotient) {
          c.pass = false;
          c.detail = "q=" + std::to_string(q) + " t=" + std::to_string(t) +
                     " quotient " + rs(quotient) + " above " + rs(bar.value.rat());
          break;
        }
      }
    }
  }
  if (c.pass) c.detail = "20 random tables, q <= 4, t <= 8";
  return c;
}

/// The threshold parts partition the function and the small part respects
/// its cap.
CheckResult check_threshold_partition(std::uint64_t seed) {
  CheckResult c{"threshold-partition", true, ""};
  for (std::uint64_t i = 0; i < 20 && c.pass; ++i) {
    std::map<std::int64_t, Rat> table;
    for (int e = 0; e < 5; ++e)
      table[static_cast<std::int64_t>(
          1 + rng::below(seed, 86, i, static_cast<std::uint64_t>(2 * e), 16))] =
          Rat(static_cast<std::int64_t>(rng::below(seed, 86, i, static_cast<std::uint64_t>(2 * e + 1), 9)),
              4);
    auto spec = PsiSpec::radial_table(table);
    auto [small, large] = psi::threshold_split(spec);
    for (std::int64_t q = 1; q <= 12; ++q) {
      IntVec qv{{q}};
      Rat whole = spec.eval(qv).rat();
      Rat lo = small.eval(qv).rat();
      Rat hi = large.eval(qv).rat();
      auto phi = static_cast<std::int64_t>(totient(static_cast<std::uint64_t>(q)));
      Rat cap(q, 2 * phi);
      if (Rat(lo + hi) != whole || lo > cap) {
        c.pass = false;
        c.detail = "q=" + std::to_string(q) + " parts " + rs(lo) + " + " + rs(hi) +
                   " vs " + rs(whole);
        break;
      }
    }
  }
  if (c.pass) c.detail = "20 random tables, 12 points each";
  return c;
}

/// Factoring the sum through primitive directions loses no terms.
CheckResult check_series_factorization(std::uint64_t seed) {
  CheckResult c{"series-factorization", true, ""};
  for (std::uint64_t i = 0; i < 10 && c.pass; ++i) {
    std::map<std::int64_t, Rat> table;
    for (int e = 0; e < 4; ++e)
      table[static_cast<std::int64_t>(
          1 + rng::below(seed, 87, i, static_cast<std::uint64_t>(2 * e), 10))] =
          Rat(static_cast<std::int64_t>(1 + rng::below(seed, 87, i, static_cast<std::uint64_t>(2 * e + 1), 6)),
              7);
    auto spec = PsiSpec::radial_table(table);
    int m = 1 + static_cast<int>(rng::below(seed, 87, i, 30, 2));
    auto direct1 = series::ds_sum(spec, 1, m, 10);
    auto fact1 = series::ds_sum_factored(spec, 1, m, 1, 10);
    if (direct1.partial_sum.rat() != fact1.partial_sum.rat()) {
      c.pass = false;
      c.detail = "one-dimensional split changed the sum";
      break;
    }
    auto direct2 = series::ds_sum(spec, 2, m, 10);
    auto fact2 = series::ds_sum_factored(spec, 2, m, 10, 10);
    if (fact2.partial_sum.rat() < direct2.partial_sum.rat()) {
      c.pass = false;
      c.detail = "factored cover missed orthant terms";
      break;
    }
  }
  if (c.pass) c.detail = "10 random tables, direct vs factored";
  return c;
}

/// Every lift satisfies the strict target inequality in exact arithmetic.
CheckResult check_lift_strict(std::uint64_t seed) {
  CheckResult c{"lift-strict", true, ""};
  int done = 0;
  for (std::uint64_t i = 0; i < 600 && done < 100 && c.pass; ++i) {
    std::map<std::int64_t, Rat> table;
    for (int e = 0; e < 3; ++e)
      table[static_cast<std::int64_t>(
          1 + rng::below(seed, 88, i, static_cast<std::uint64_t>(2 * e), 12))] =
          Rat(static_cast<std::int64_t>(1 + rng::below(seed, 88, i, static_cast<std::uint64_t>(2 * e + 1), 5)),
              static_cast<std::int64_t>(1 + rng::below(seed, 88, i, static_cast<std::uint64_t>(10 + e), 5)));
    auto spec = PsiSpec::radial_table(table);
    auto q0 = static_cast<std::int64_t>(1 + rng::below(seed, 88, i, 20, 4));
    auto bar = psi::catlin_bar(spec, IntVec{{q0}}, 12);
    if (bar.value.is_zero()) continue;
    auto u = static_cast<std::int64_t>(rng::below(seed, 88, i, 21, 1000));
    auto p0 = static_cast<std::int64_t>(rng::below(seed, 88, i, 22, 5));
    Rat residual = Rat(bar.value.rat() * u / 1000);
    montecarlo::RatMatrix x(1, 1);
    x.at(0, 0) = Rat((p0 + residual) / q0);
    auto lift = montecarlo::lift_solution(IntVec{{p0}}, IntVec{{q0}}, spec, x, 12);
    if (!lift.lifted ||
        Rat(residual * lift.witness_t) >= spec.eval(lift.lifted->second).rat()) {
      c.pass = false;
      c.detail = "q=" + std::to_string(q0) + " residual " + rs(residual);
      break;
    }
    ++done;
  }
  if (c.pass) c.detail = std::to_string(done) + " random lifts";
  return c;
}

/// Fast enumeration equals the brute-force double loop.
CheckResult check_enumeration_oracle(std::uint64_t seed) {
  CheckResult c{"enumeration-oracle", true, ""};
  for (std::uint64_t i = 0; i < 5 && c.pass; ++i) {
    std::map<std::int64_t, Rat> table;
    Rat top(0);
    std::int64_t Q = 3 + static_cast<std::int64_t>(rng::below(seed, 89, i, 0, 8));
    for (std::int64_t k = 1; k <= Q; ++k) {
      Rat v(static_cast<std::int64_t>(rng::below(seed, 89, i, 10 + static_cast<std::uint64_t>(k), 4)),
            static_cast<std::int64_t>(1 + rng::below(seed, 89, i, 30 + static_cast<std::uint64_t>(k), 5)));
      table[k] = v;
      if (v > top) top = v;
    }
    auto spec = PsiSpec::radial_table(table);
    montecarlo::RatMatrix x(1, 1);
    x.at(0, 0) = Rat(static_cast<std::int64_t>(rng::below(seed, 89, i, 1, 89)), 89);
    bool coprime = i % 2 == 0;
    auto fast = montecarlo::enumerate_solutions(x, spec, Q, coprime);
    std::int64_t B = Q + rat_ceil(top).convert_to<std::int64_t>() + 1;
    std::vector<montecarlo::Solution> slow;
    for (std::int64_t q = 1; q <= Q; ++q) {
      Rat psiq = spec.eval(IntVec{{q}}).rat();
      if (psiq == 0) continue;
      for (std::int64_t p = -B; p <= B; ++p) {
        Rat diff = Rat(q * x.at(0, 0) - p);
        Rat ad = diff < 0 ? Rat(-diff) : diff;
        bool ok = std::gcd(p, q) == 1;
        if (ad < psiq && (!coprime || ok))
          slow.push_back(montecarlo::Solution{IntVec{{p}}, IntVec{{q}}, ad, ok});
      }
    }
    if (fast.size() != slow.size()) {
      c.pass = false;
      c.detail = "case " + std::to_string(i) + ": " + std::to_string(fast.size()) +
                 " vs " + std::to_string(slow.size()) + " solutions";
      break;
    }
    for (std::size_t t = 0; t < fast.size(); ++t)
      if (fast[t].p != slow[t].p || fast[t].q != slow[t].q ||
          fast[t].residual != slow[t].residual) {
        c.pass = false;
        c.detail = "case " + std::to_string(i) + ": solution lists diverge";
        break;
      }
  }
  if (c.pass) c.detail = "5 random one-dimensional cases";
  return c;
}

/// The union of the divisor-supported sets stays inside the 2 eta corridor.
CheckResult check_counterexample_bound(std::uint64_t seed) {
  CheckResult c{"counterexample-bound", true, ""};
  for (std::uint64_t i = 0; i < 10 && c.pass; ++i) {
    auto N = static_cast<std::int64_t>(2 + rng::below(seed, 90, i, 0, 28));
    Rat eta(static_cast<std::int64_t>(1 + rng::below(seed, 90, i, 1, 6)),
            static_cast<std::int64_t>(1 + rng::below(seed, 90, i, 2, 9)));
    auto rep = montecarlo::counterexample_demo(N, eta, 50, seed + i);
    Int sigma = 0;
    for (auto d : arith::divisors(static_cast<std::uint64_t>(N))) sigma += d;
    if (rep.union_exact > Rat(2 * eta) || rep.sum != Rat(2 * eta * Rat(sigma) / N)) {
      c.pass = false;
      c.detail = "N=" + std::to_string(N) + " eta=" + rs(eta);
    }
  }
  if (c.pass) c.detail = "10 random (N, eta) pairs";
  return c;
}

}  // namespace

std::vector<CheckResult> run_all_checks(std::uint64_t seed) {
  return {check_measure_law(),
          check_sandwich(seed),
          check_direction_invariance(seed),
          check_dilation(seed),
          check_union_lower_bound(seed),
          check_overlap_indicator(),
          check_transform_dominates(seed),
          check_threshold_partition(seed),
          check_series_factorization(seed),
          check_lift_strict(seed),
          check_enumeration_oracle(seed),
          check_counterexample_bound(seed)};
}

bool all_pass(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

}  // namespace diolab::lemmas
