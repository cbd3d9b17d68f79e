#include "diolab/montecarlo.hpp"

#include "diolab/parallel.hpp"
#include "diolab/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace diolab::montecarlo {

using arith::vec_gcd;
using torus_sets::ArcUnion;
using torus_sets::SetMode;

namespace {

constexpr int kFracBits = 128;

Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

/// Floor division for b > 0 (cpp_int '/' truncates toward zero).
Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if (a < 0 && a % b != 0) --q;
  return q;
}

Int ceil_div(const Int& a, const Int& b) { return Int(-floor_div(Int(-a), b)); }

const Int& dyadic_one() {
  static const Int D = Int(1) << kFracBits;
  return D;
}

/// Numerator of a dyadic rational over the fixed denominator 2^128.
Int dyadic_num(const Rat& r) {
  const Int& D = dyadic_one();
  return Int(rat_num(r) * (D / rat_den(r)));
}

MCReport make_report(std::int64_t samples, std::int64_t hits, std::uint64_t seed,
                     std::vector<std::pair<std::string, std::string>> params) {
  MCReport r;
  r.samples = samples;
  r.hits = hits;
  r.fraction = static_cast<double>(hits) / static_cast<double>(samples);
  r.std_error =
      std::sqrt(r.fraction * (1.0 - r.fraction) / static_cast<double>(samples));
  r.seed = seed;
  r.parameters = std::move(params);
  return r;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace

RatMatrix::RatMatrix(int n_, int m_) : n(n_), m(m_) {
  if (n < 1 || m < 1) throw std::domain_error("RatMatrix: n, m must be positive");
  a.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(m), Rat(0));
}

const Rat& RatMatrix::at(int i, int j) const {
  return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) +
           static_cast<std::size_t>(j)];
}

Rat& RatMatrix::at(int i, int j) {
  return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) +
           static_cast<std::size_t>(j)];
}

RatMatrix sample_matrix(int n, int m, std::uint64_t seed, std::uint64_t stream,
                        std::uint64_t index) {
  RatMatrix x(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      x.at(i, j) = rng::unit_dyadic(
          seed, stream, index,
          static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(m) +
              static_cast<std::uint64_t>(j));
  return x;
}

std::string to_string(LatticeMode mode) {
  return mode == LatticeMode::orthant ? "orthant" : "full";
}

std::vector<Solution> enumerate_solutions(const RatMatrix& x, const PsiSpec& spec,
                                          std::int64_t Q, bool coprime) {
  if (x.n < 1 || x.m < 1)
    throw std::domain_error("enumerate_solutions: empty matrix");
  if (Q < 1) throw std::domain_error("enumerate_solutions: Q must be >= 1");
  if (!spec.rational_valued())
    throw std::domain_error(
        "enumerate_solutions: exact enumeration requires a rational-valued spec");

  const int m = x.m;
  std::vector<Solution> out;
  arith::for_each_orthant(x.n, Q, [&](const IntVec& q) {
    Rat psiq = spec.eval(q).rat();
    if (psiq == 0) return;  // strict |qx - p| < 0 is unsatisfiable
    std::int64_t g = vec_gcd(q);

    std::vector<Rat> t(static_cast<std::size_t>(m), Rat(0));
    for (int j = 0; j < m; ++j) {
      Rat s(0);
      for (int i = 0; i < x.n; ++i)
        if (q.c[static_cast<std::size_t>(i)] != 0)
          s += q.c[static_cast<std::size_t>(i)] * x.at(i, j);
      t[static_cast<std::size_t>(j)] = s;
    }

    std::vector<std::int64_t> lo(static_cast<std::size_t>(m));
    std::vector<std::int64_t> hi(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
      auto js = static_cast<std::size_t>(j);
      lo[js] = rat_ceil(Rat(t[js] - psiq)).convert_to<std::int64_t>();
      hi[js] = rat_floor(Rat(t[js] + psiq)).convert_to<std::int64_t>();
      if (lo[js] > hi[js]) return;
    }

    IntVec p;
    p.c.assign(lo.begin(), lo.end());
    for (;;) {
      Rat residual(0);
      for (int j = 0; j < m; ++j) {
        auto js = static_cast<std::size_t>(j);
        Rat d = rat_abs(Rat(t[js] - p.c[js]));
        if (d > residual) residual = d;
      }
      if (residual < psiq) {
        bool ok = true;
        for (std::int64_t pj : p.c)
          if (std::gcd(pj, g) != 1) {
            ok = false;
            break;
          }
        if (!coprime || ok) out.push_back(Solution{p, q, residual, ok});
      }
      int j = m - 1;
      while (j >= 0 && p.c[static_cast<std::size_t>(j)] == hi[static_cast<std::size_t>(j)]) {
        p.c[static_cast<std::size_t>(j)] = lo[static_cast<std::size_t>(j)];
        --j;
      }
      if (j < 0) break;
      ++p.c[static_cast<std::size_t>(j)];
    }
  });
  return out;
}

namespace {

/// Per-direction data for the exact counting kernel: psi(q) = a/b, stored
/// pre-scaled by the dyadic denominator D so the per-sample work is integer
/// only. Entries are built once, in orthant walk order, and shared read-only
/// across threads.
struct RadiusEntry {
  bool zero = true;
  std::int64_t g = 1;
  Int b;    // den(psi)
  Int aD;   // num(psi) * D
  Int Db;   // D * den(psi)
};

std::vector<RadiusEntry> build_radius_cache(const PsiSpec& spec, int n,
                                            std::int64_t Q) {
  Int points = 1;
  for (int k = 0; k < n; ++k) points *= Q + 1;
  points -= 1;
  if (points > 8'000'000)
    throw std::domain_error(
        "hit_fraction: orthant [0,Q]^n too large to enumerate; reduce Q or n");

  const Int& D = dyadic_one();
  std::vector<RadiusEntry> cache;
  cache.reserve(points.convert_to<std::size_t>());
  arith::for_each_orthant(n, Q, [&](const IntVec& q) {
    RadiusEntry e;
    Rat psiq = spec.eval(q).rat();
    if (psiq > 0) {
      e.zero = false;
      e.g = vec_gcd(q);
      e.b = rat_den(psiq);
      e.aD = Int(rat_num(psiq) * D);
      e.Db = Int(D * e.b);
    }
    cache.push_back(std::move(e));
  });
  return cache;
}

/// Number of integers p with |w/D - p| < psi, i.e. in the open interval
/// ((w b - a D) / (D b), (w b + a D) / (D b)); when filtering, only those
/// coprime to g.
Int count_numerators(const Int& w, const RadiusEntry& e, bool coprime) {
  Int wb = w * e.b;
  Int lo = floor_div(Int(wb - e.aD), e.Db) + 1;
  Int hi = ceil_div(Int(wb + e.aD), e.Db) - 1;
  if (hi < lo) return Int(0);
  if (!coprime || e.g == 1) return Int(hi - lo + 1);
  Int c = 0;
  for (Int p = lo; p <= hi; ++p)
    if (std::gcd(p.convert_to<std::int64_t>(), e.g) == 1) ++c;
  return c;
}

}  // namespace

MCReport hit_fraction(const PsiSpec& spec, const HitParams& par) {
  if (par.n < 1 || par.m < 1)
    throw std::domain_error("hit_fraction: n, m must be positive");
  if (par.Q < 1) throw std::domain_error("hit_fraction: Q must be >= 1");
  if (par.q_min < 0) throw std::domain_error("hit_fraction: negative q_min");
  if (par.K < 1) throw std::domain_error("hit_fraction: K must be >= 1");
  if (par.samples < 1) throw std::domain_error("hit_fraction: samples must be >= 1");
  if (!spec.rational_valued())
    throw std::domain_error(
        "hit_fraction: exact counting requires a rational-valued spec");

  const auto cache = build_radius_cache(spec, par.n, par.Q);
  const auto n = par.n;
  const auto m = par.m;
  const Int K = par.K;

  std::atomic<std::int64_t> hits{0};
  parallel_chunks(par.samples, par.threads, [&](std::int64_t sb, std::int64_t se) {
    std::vector<Int> u(static_cast<std::size_t>(n) * static_cast<std::size_t>(m));
    std::vector<int> sup;
    std::int64_t local = 0;
    for (std::int64_t s = sb; s < se; ++s) {
      for (std::size_t k = 0; k < u.size(); ++k)
        u[k] = dyadic_num(rng::unit_dyadic(par.seed, kHitStream,
                                           static_cast<std::uint64_t>(s), k));
      Int count = 0;
      std::size_t idx = 0;
      arith::for_each_orthant(n, par.Q, [&](const IntVec& q) -> bool {
        const RadiusEntry& e = cache[idx++];
        if (e.zero || q.norm() <= par.q_min) return true;
        sup.clear();
        for (int i = 0; i < n; ++i)
          if (q.c[static_cast<std::size_t>(i)] != 0) sup.push_back(i);
        unsigned masks =
            par.lattice == LatticeMode::full ? 1u << sup.size() : 1u;
        for (unsigned mask = 0; mask < masks; ++mask) {
          Int contrib = 1;
          for (int j = 0; j < m; ++j) {
            Int w = 0;
            for (std::size_t b = 0; b < sup.size(); ++b) {
              auto i = static_cast<std::size_t>(sup[b]);
              std::int64_t qi = q.c[i];
              if (mask >> b & 1u) qi = -qi;
              w += qi * u[i * static_cast<std::size_t>(m) +
                          static_cast<std::size_t>(j)];
            }
            contrib *= count_numerators(w, e, par.coprime);
            if (contrib == 0) break;
          }
          count += contrib;
        }
        return count < K;
      });
      if (count >= K) ++local;
    }
    hits.fetch_add(local, std::memory_order_relaxed);
  });

  return make_report(
      par.samples, hits.load(), par.seed,
      {{"n", std::to_string(par.n)},
       {"m", std::to_string(par.m)},
       {"Q", std::to_string(par.Q)},
       {"q_min", std::to_string(par.q_min)},
       {"K", std::to_string(par.K)},
       {"coprime", bool_str(par.coprime)},
       {"lattice", to_string(par.lattice)}});
}

namespace {

/// Precomputed membership test for one set descriptor.
struct Membership {
  const ApproxSet* set = nullptr;
  std::int64_t g = 1;
  std::vector<std::int64_t> filter;  // sorted residues, filtered mode only
  bool never = false;                // empty set (eps 0 or empty filter)
  bool always = false;               // 2 eps > g: every residue class in reach

  explicit Membership(const ApproxSet& s) : set(&s) {
    s.validate();
    g = vec_gcd(s.q);
    if (s.mode == SetMode::filtered) {
      for (std::int64_t p : *s.numerator_filter) {
        if (p < 0 || p >= g || std::gcd(p, g) != 1)
          throw std::domain_error(
              "empirical_union_measure: filter entries must be residues coprime "
              "to gcd(q)");
        filter.push_back(p);
      }
      std::sort(filter.begin(), filter.end());
      filter.erase(std::unique(filter.begin(), filter.end()), filter.end());
    }
    if (s.epsilon == 0 || (s.mode == SetMode::filtered && filter.empty()))
      never = true;
    else if (2 * s.epsilon > g)
      // An open interval longer than g holds g consecutive integers, hence
      // every residue class mod g.
      always = true;
  }

  bool admissible(std::int64_t p) const {
    switch (set->mode) {
      case SetMode::plain:
        return true;
      case SetMode::coprime:
        return std::gcd(p, g) == 1;
      case SetMode::filtered: {
        std::int64_t r = p % g;
        if (r < 0) r += g;
        return std::binary_search(filter.begin(), filter.end(), r);
      }
    }
    return false;
  }

  bool contains(const RatMatrix& x) const {
    if (never) return false;
    if (always) return true;
    const Rat& eps = set->epsilon;
    for (int j = 0; j < set->m; ++j) {
      Rat t(0);
      for (int i = 0; i < set->n; ++i)
        if (set->q.c[static_cast<std::size_t>(i)] != 0)
          t += set->q.c[static_cast<std::size_t>(i)] * x.at(i, j);
      Int lo = rat_ceil(Rat(t - eps));
      Int hi = rat_floor(Rat(t + eps));
      bool ok = false;
      for (Int p = lo; p <= hi; ++p) {
        auto pv = p.convert_to<std::int64_t>();
        if (rat_abs(Rat(t - p)) < eps && admissible(pv)) {
          ok = true;
          break;
        }
      }
      if (!ok) return false;
    }
    return true;
  }
};

}  // namespace

bool set_contains(const ApproxSet& set, const RatMatrix& x) {
  if (x.n != set.n || x.m != set.m)
    throw std::domain_error("set_contains: matrix shape does not match the set");
  return Membership(set).contains(x);
}

MCReport empirical_union_measure(const std::vector<ApproxSet>& sets,
                                 std::int64_t samples, std::uint64_t seed,
                                 unsigned threads) {
  if (sets.empty())
    throw std::domain_error("empirical_union_measure: empty set list");
  if (samples < 1)
    throw std::domain_error("empirical_union_measure: samples must be >= 1");
  const int n = sets.front().n;
  const int m = sets.front().m;
  std::vector<Membership> tests;
  tests.reserve(sets.size());
  for (const auto& s : sets) {
    if (s.n != n || s.m != m)
      throw std::domain_error("empirical_union_measure: mixed (n, m) in the list");
    tests.emplace_back(s);
  }

  std::atomic<std::int64_t> hits{0};
  parallel_chunks(samples, threads, [&](std::int64_t sb, std::int64_t se) {
    std::int64_t local = 0;
    for (std::int64_t s = sb; s < se; ++s) {
      RatMatrix x = sample_matrix(n, m, seed, kUnionStream,
                                  static_cast<std::uint64_t>(s));
      for (const auto& t : tests)
        if (t.contains(x)) {
          ++local;
          break;
        }
    }
    hits.fetch_add(local, std::memory_order_relaxed);
  });

  return make_report(samples, hits.load(), seed,
                     {{"n", std::to_string(n)},
                      {"m", std::to_string(m)},
                      {"sets", std::to_string(sets.size())}});
}

LiftResult lift_solution(const IntVec& p, const IntVec& q, const PsiSpec& spec,
                         const RatMatrix& x, std::int64_t t_max, unsigned prec) {
  if (x.n < 1 || x.m < 1) throw std::domain_error("lift_solution: empty matrix");
  if (q.dim() != x.n || p.dim() != x.m)
    throw std::domain_error("lift_solution: (p, q) shape does not match the matrix");
  auto bar = psi::catlin_bar(spec, q, t_max, prec);

  Rat residual(0);
  for (int j = 0; j < x.m; ++j) {
    Rat t(0);
    for (int i = 0; i < x.n; ++i)
      if (q.c[static_cast<std::size_t>(i)] != 0)
        t += q.c[static_cast<std::size_t>(i)] * x.at(i, j);
    Rat d = rat_abs(Rat(t - p.c[static_cast<std::size_t>(j)]));
    if (d > residual) residual = d;
  }

  auto at_most = bar.value.less_equal(residual);  // bar <= residual?
  if (!at_most.has_value())
    return {std::nullopt, bar.witness_t,
            "cannot decide residual < transform value at this precision"};
  if (*at_most)
    throw std::domain_error(
        "lift_solution: residual reaches the transform value; (p, q) is not a "
        "transform solution");

  IntVec ps = bar.witness_t * p;
  IntVec qs = bar.witness_t * q;
  Value target = spec.eval(qs, prec);
  Rat scaled = Rat(residual * bar.witness_t);
  auto fails = target.less_equal(scaled);  // psi(q*) <= t * residual?
  if (!fails.has_value())
    return {std::nullopt, bar.witness_t,
            "cannot certify the lifted inequality at this precision"};
  if (*fails)
    return {std::nullopt, bar.witness_t,
            "no t in range attains the supremum tightly enough to lift"};
  return {std::make_pair(std::move(ps), std::move(qs)), bar.witness_t, ""};
}

CounterexampleReport counterexample_demo(std::int64_t N, const Rat& eta,
                                         std::int64_t samples, std::uint64_t seed,
                                         unsigned threads) {
  if (N < 2) throw std::domain_error("counterexample_demo: N must be >= 2");
  if (eta <= 0) throw std::domain_error("counterexample_demo: eta must be positive");
  if (samples < 1)
    throw std::domain_error("counterexample_demo: samples must be >= 1");

  auto divs = arith::divisors(static_cast<std::uint64_t>(N));
  Rat sum(0);
  Rat radius = eta / N;  // psi(d)/d for every divisor d
  std::vector<ArcUnion::Arc> raw;
  std::vector<ApproxSet> sets;
  for (std::uint64_t du : divs) {
    auto d = static_cast<std::int64_t>(du);
    Rat psid = Rat(eta * d / N);
    sum += 2 * psid;
    for (std::int64_t pnum = 0; pnum < d; ++pnum) {
      Rat center(pnum, d);
      raw.emplace_back(Rat(center - radius), Rat(center + radius));
    }
    ApproxSet s;
    s.n = 1;
    s.m = 1;
    s.q = IntVec{{d}};
    s.epsilon = psid;
    s.mode = SetMode::plain;
    sets.push_back(std::move(s));
  }

  CounterexampleReport rep;
  rep.sum = sum;
  rep.union_exact = ArcUnion::from_raw(raw).measure();
  rep.union_mc = empirical_union_measure(sets, samples, seed, threads);
  rep.union_mc.parameters.emplace_back("N", std::to_string(N));
  rep.union_mc.parameters.emplace_back("eta", rat_to_string(eta));
  return rep;
}

}  // namespace diolab::montecarlo
