#include "diolab/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace diolab::series {

using arith::totient;
using arith::vec_gcd;
using psi::PsiSpec;

std::string to_string(VerdictHint v) {
  switch (v) {
    case VerdictHint::diverging_trend: return "diverging-trend";
    case VerdictHint::converging_trend: return "converging-trend";
    case VerdictHint::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

void check_common(int n, int m, std::int64_t Q) {
  if (n < 1) throw std::domain_error("series: n must be >= 1");
  if (m < 1) throw std::domain_error("series: m must be >= 1");
  if (Q < 1) throw std::domain_error("series: cutoff must be >= 1");
}

double lsq_slope(const double* xs, const double* ys, std::size_t k) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < k; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(k);
  my /= static_cast<double>(k);
  double num = 0, den = 0;
  for (std::size_t i = 0; i < k; ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) * (xs[i] - mx);
  }
  return den == 0 ? 0.0 : num / den;
}

VerdictHint trend(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (ys.empty() || ys.back() <= 0) return VerdictHint::converging_trend;
  if (xs.size() < 4) return VerdictHint::inconclusive;
  double all = lsq_slope(xs.data(), ys.data(), xs.size());
  if (all <= ys.back() * 1e-12) return VerdictHint::converging_trend;
  std::size_t tail = std::max<std::size_t>(2, xs.size() / 2);
  std::size_t off = xs.size() - tail;
  double late = lsq_slope(xs.data() + off, ys.data() + off, tail);
  double ratio = late / all;
  if (ratio >= 0.5) return VerdictHint::diverging_trend;
  if (ratio <= 0.125) return VerdictHint::converging_trend;
  return VerdictHint::inconclusive;
}

/// Streams shell sums h = 1..Q in order and assembles the report fields.
class ShellAccum {
 public:
  explicit ShellAccum(std::int64_t Q) : Q_(Q), half_(Q / 2) {}

  void shell(std::int64_t h, const Value& sum, std::int64_t nonzero) {
    total_ = total_ + sum;
    if (h > half_) block_ = block_ + sum;
    nonzero_ += nonzero;
    if (h == next_cp_ || h == Q_) {
      xs_.push_back(std::log2(static_cast<double>(h)));
      ys_.push_back(total_.approx());
      while (next_cp_ <= h) next_cp_ *= 2;
    }
  }

  SeriesReport finish(std::vector<std::pair<std::string, std::int64_t>> cutoffs) {
    SeriesReport rep;
    rep.cutoffs = std::move(cutoffs);
    rep.partial_sum = std::move(total_);
    rep.term_count = nonzero_;
    rep.last_block_sum = std::move(block_);
    rep.verdict_hint = trend(xs_, ys_);
    return rep;
  }

 private:
  std::int64_t Q_;
  std::int64_t half_;
  Value total_{Rat(0)};
  Value block_{Rat(0)};
  std::int64_t nonzero_ = 0;
  std::int64_t next_cp_ = 1;
  std::vector<double> xs_, ys_;
};

/// Shared driver: shells of the sup norm, lexicographic within a shell.
template <typename TermFn>
SeriesReport sum_over_orthant(int n, std::int64_t Q, TermFn&& term_at,
                              std::vector<std::pair<std::string, std::int64_t>> cutoffs) {
  ShellAccum acc(Q);
  if (n == 1) {
    IntVec q{{0}};
    for (std::int64_t h = 1; h <= Q; ++h) {
      q.c[0] = h;
      Value t = term_at(q);
      std::int64_t nz = t.is_zero() ? 0 : 1;
      acc.shell(h, t, nz);
    }
  } else {
    std::vector<Value> shell(static_cast<std::size_t>(Q) + 1, Value(Rat(0)));
    std::vector<std::int64_t> counts(static_cast<std::size_t>(Q) + 1, 0);
    arith::for_each_orthant(n, Q, [&](const IntVec& q) {
      Value t = term_at(q);
      auto h = static_cast<std::size_t>(q.norm());
      if (!t.is_zero()) ++counts[h];
      shell[h] = shell[h] + t;
    });
    for (std::int64_t h = 1; h <= Q; ++h)
      acc.shell(h, shell[static_cast<std::size_t>(h)],
                counts[static_cast<std::size_t>(h)]);
  }
  return acc.finish(std::move(cutoffs));
}

void check_radial(const PsiSpec& spec, const char* who) {
  if (auto d = spec.dim(); d && *d != 1)
    throw std::domain_error(std::string(who) + ": spec pins a dimension other than 1");
}

Rat phi_over(std::int64_t g) {
  return Rat(static_cast<std::int64_t>(totient(static_cast<std::uint64_t>(g))), g);
}

}  // namespace

SeriesReport ds_sum(const PsiSpec& spec, int n, int m, std::int64_t Q, unsigned prec) {
  check_common(n, m, Q);
  return sum_over_orthant(
      n, Q,
      [&](const IntVec& q) {
        Value v = Value(phi_over(vec_gcd(q))) * spec.eval(q, prec);
        return v.pow_int(m);
      },
      {{"Q", Q}});
}

SeriesReport ds_sum_factored(const PsiSpec& spec, int n, int m, std::int64_t H_prim,
                             std::int64_t D, unsigned prec) {
  check_common(n, m, D);
  if (H_prim < 1) throw std::domain_error("series: cutoff must be >= 1");
  std::vector<IntVec> prims = arith::primitive_vectors(n, H_prim);
  ShellAccum acc(D);
  for (std::int64_t d = 1; d <= D; ++d) {
    Value sum{Rat(0)};
    std::int64_t nz = 0;
    Rat w = phi_over(d);
    for (const IntVec& qp : prims) {
      Value t = (Value(w) * spec.eval(d * qp, prec)).pow_int(m);
      if (!t.is_zero()) ++nz;
      sum = sum + t;
    }
    acc.shell(d, sum, nz);
  }
  return acc.finish({{"H_prim", H_prim}, {"D", D}});
}

namespace {

/// Rigorous bound on the omitted sum over primitive |q'| > H of
/// psi(d q')^m; {nullopt, true} marks a provably divergent tail.
std::pair<std::optional<Value>, bool> tail_bound(const PsiSpec& spec, int n, int m,
                                                 std::int64_t d, std::int64_t H,
                                                 unsigned prec) {
  if (auto R = spec.support_norm()) {
    if (H >= 1 && d >= 1 && H * d >= *R) return {Value(Rat(0)), false};
    return {std::nullopt, false};
  }
  switch (spec.kind()) {
    case PsiSpec::Kind::power_law: {
      Rat tm = spec.power_law_tau() * Rat(m);
      if (tm <= n) return {std::nullopt, true};
      // Shell h holds at most n 2^(n-1) h^(n-1) lattice points, each term
      // c^m (d h)^(-tau m); compare the sum over h > H with the integral.
      Rat coeff = Rat(n) * rat_pow(Rat(2), static_cast<unsigned>(n - 1)) *
                  rat_pow(spec.power_law_c(), static_cast<unsigned>(m));
      Rat denom = tm - Rat(n);
      coeff = coeff / denom;
      Rat neg_tm = -tm;
      Rat n_minus_tm = Rat(n) - tm;
      Value t = Value(coeff) * Value(Rat(d)).pow_rat(neg_tm, prec) *
                Value(Rat(H)).pow_rat(n_minus_tm, prec);
      return {t, false};
    }
    case PsiSpec::Kind::threshold_part:
      // Both parts are dominated by the inner function pointwise.
      return tail_bound(spec.inner(), n, m, d, H, prec);
    case PsiSpec::Kind::catlin_transform: {
      const PsiSpec& in = spec.inner();
      if (in.kind() == PsiSpec::Kind::power_law && in.power_law_tau() >= -1)
        return tail_bound(in, n, m, d, H, prec);  // psi_bar = psi here
      return {std::nullopt, false};
    }
    default:
      return {std::nullopt, false};
  }
}

}  // namespace

CapitalPsiReport capital_psi(const PsiSpec& spec, int n, int m, std::int64_t d,
                             std::int64_t H, unsigned prec) {
  check_common(n, m, H);
  if (d < 1) throw std::domain_error("capital_psi: d must be >= 1");
  Value sum{Rat(0)};
  arith::PrimitiveVectors stream(n, H);
  IntVec qp;
  while (stream.next(qp)) sum = sum + spec.eval(d * qp, prec).pow_int(m);

  CapitalPsiReport rep;
  rep.value = (m == 1) ? sum : sum.root(static_cast<unsigned>(m), prec);
  // n = 1 has the single primitive direction (1): any H >= 1 exhausts it.
  auto [bound, unbounded] =
      n == 1 ? std::pair<std::optional<Value>, bool>{Value(Rat(0)), false}
             : tail_bound(spec, n, m, d, H, prec);
  rep.tail_unbounded = unbounded;
  if (bound) {
    Value total = sum + *bound;
    rep.value_upper = (m == 1) ? total : total.root(static_cast<unsigned>(m), prec);
    rep.sum_tail_bound = std::move(*bound);
  }
  return rep;
}

SeriesReport catlin_sum(const PsiSpec& spec, int n, int m, std::int64_t Q,
                        std::int64_t t_max, arith::PhiMode mode, unsigned prec) {
  check_common(n, m, Q);
  if (t_max < 1) throw std::domain_error("catlin_sum: t_max must be >= 1");
  return sum_over_orthant(
      n, Q,
      [&](const IntVec& q) {
        Value bar = psi::catlin_bar(spec, q, t_max, prec).value;
        if (bar.is_zero()) return Value(Rat(0));
        Rat weight(arith::phi_m(q, m, mode));
        return Value(weight) * bar.div(Value(Rat(q.norm()))).pow_int(m);
      },
      {{"Q", Q}, {"t_max", t_max}});
}

SeriesReport khintchine_sum(const PsiSpec& spec, int m, std::int64_t Q, unsigned prec) {
  check_common(1, m, Q);
  check_radial(spec, "khintchine_sum");
  return sum_over_orthant(
      1, Q, [&](const IntVec& q) { return spec.eval(q, prec).pow_int(m); },
      {{"Q", Q}});
}

SeriesReport kg_sum(const PsiSpec& spec, int n, int m, std::int64_t Q, unsigned prec) {
  check_common(n, m, Q);
  check_radial(spec, "kg_sum");
  return sum_over_orthant(
      1, Q,
      [&](const IntVec& q) {
        Rat growth = rat_pow(Rat(q.c[0]), static_cast<unsigned>(n - 1));
        return Value(growth) * spec.eval(q, prec).pow_int(m);
      },
      {{"Q", Q}});
}

SeriesReport bv_sum(const PsiSpec& spec, int n, int m, std::int64_t Q, unsigned prec) {
  check_common(n, m, Q);
  return sum_over_orthant(
      n, Q, [&](const IntVec& q) { return spec.eval(q, prec).pow_int(m); },
      {{"Q", Q}});
}

SeriesReport hausdorff_ds_sum(const PsiSpec& spec, int n, int m, const Rat& s,
                              std::int64_t Q, unsigned prec) {
  check_common(n, m, Q);
  if (s <= 0) throw std::domain_error("hausdorff_ds_sum: s must be positive");
  return sum_over_orthant(
      n, Q,
      [&](const IntVec& q) {
        std::int64_t g = vec_gcd(q);
        std::int64_t norm = q.norm();
        Rat weight(static_cast<std::int64_t>(totient(static_cast<std::uint64_t>(g))) * norm,
                   g);
        Value scaled = spec.eval(q, prec).div(Value(Rat(norm)));
        return Value(rat_pow(weight, static_cast<unsigned>(m))) * scaled.pow_rat(s, prec);
      },
      {{"Q", Q}});
}

SeriesReport hausdorff_catlin_sum(const PsiSpec& spec, int n, int m, const Rat& s,
                                  std::int64_t Q, std::int64_t t_max,
                                  arith::PhiMode mode, unsigned prec) {
  check_common(n, m, Q);
  if (t_max < 1) throw std::domain_error("hausdorff_catlin_sum: t_max must be >= 1");
  if (s <= 0) throw std::domain_error("hausdorff_catlin_sum: s must be positive");
  return sum_over_orthant(
      n, Q,
      [&](const IntVec& q) {
        Value bar = psi::catlin_bar(spec, q, t_max, prec).value;
        if (bar.is_zero()) return Value(Rat(0));
        Rat weight(arith::phi_m(q, m, mode));
        return Value(weight) * bar.div(Value(Rat(q.norm()))).pow_rat(s, prec);
      },
      {{"Q", Q}, {"t_max", t_max}});
}

}  // namespace diolab::series
