#include "diolab/measures.hpp"

#include <algorithm>
#include <numeric>

namespace diolab::measures {

using torus_sets::approx_set_1d;
using torus_sets::ArcUnion;
using arith::primitive_part;
using arith::totient;
using arith::vec_gcd;
using arith::factorize;

Rat measure_A(const ApproxSet& s) {
  ArcUnion u = s.reduced();
  return rat_pow(u.measure(), static_cast<unsigned>(s.m));
}

Rat measure_intersection(const ApproxSet& s1, const ApproxSet& s2) {
  s1.validate();
  s2.validate();
  if (s1.n != s2.n || s1.m != s2.m)
    throw std::domain_error("measure_intersection: mismatched (n, m)");
  auto d1 = primitive_part(s1.q);
  auto d2 = primitive_part(s2.q);
  if (d1.direction == d2.direction) {
    // Same line through the orthant: one shared uniform coordinate, arcs at
    // the two scales intersect exactly.
    ArcUnion a = approx_set_1d(d1.scale, s1.epsilon, s1.mode, s1.numerator_filter);
    ArcUnion b = approx_set_1d(d2.scale, s2.epsilon, s2.mode, s2.numerator_filter);
    return rat_pow(intersect(a, b).measure(), static_cast<unsigned>(s1.m));
  }
  // Distinct primitive directions are linearly independent over Q, so the
  // sets are genuinely independent and measures multiply.
  return measure_A(s1) * measure_A(s2);
}

namespace {

Rat radius_cap(std::int64_t d) {
  return Rat(d, 2 * static_cast<std::int64_t>(totient(static_cast<std::uint64_t>(d))));
}

OverlapReport overlap_core(std::int64_t k, std::int64_t l, const Rat& Psi_k,
                           const Rat& Psi_l) {
  OverlapReport rep;
  rep.k = k;
  rep.l = l;
  std::int64_t g = std::gcd(k, l);
  rep.M = std::max(Rat(l) * Psi_k, Rat(k) * Psi_l);
  // Nonempty overlap of the two arc families forces a nonzero multiple of
  // gcd(k,l) strictly below l*Psi_k + k*Psi_l <= 2M, so 2M < gcd certifies
  // an empty intersection; the non-strict >= keeps equality conservative.
  rep.indicator = 2 * rep.M >= g;

  ApproxSet a{1, 1, IntVec{{k}}, Psi_k, torus_sets::SetMode::coprime, std::nullopt};
  ApproxSet b{1, 1, IntVec{{l}}, Psi_l, torus_sets::SetMode::coprime, std::nullopt};
  rep.lhs = measure_intersection(a, b);

  if (!rep.indicator) {
    rep.rhs = 0;
  } else {
    Rat base = (Rat(static_cast<std::int64_t>(totient(static_cast<std::uint64_t>(k)))) *
                Psi_k / k) *
               (Rat(static_cast<std::int64_t>(totient(static_cast<std::uint64_t>(l)))) *
                Psi_l / l);
    // Primes dividing kl/g^2 above the threshold M/g contribute (1 + 1/p).
    std::uint64_t core = static_cast<std::uint64_t>((k / g)) *
                         static_cast<std::uint64_t>(l / g);
    Rat threshold = rep.M / g;
    Rat prod = 1;
    for (auto [p, e] : factorize(core)) {
      (void)e;
      if (Rat(static_cast<std::int64_t>(p)) > threshold)
        prod *= Rat(static_cast<std::int64_t>(p) + 1, static_cast<std::int64_t>(p));
    }
    rep.rhs = base * prod;
  }

  if (rep.rhs > 0) {
    rep.ratio = rep.lhs / rep.rhs;
    rep.flag = RatioFlag::finite;
  } else if (rep.lhs == 0) {
    rep.flag = RatioFlag::zero_over_zero;
  } else {
    rep.flag = RatioFlag::positive_over_zero;
  }
  return rep;
}

}  // namespace

OverlapReport pv_overlap_bound(std::int64_t k, std::int64_t l, const Rat& Psi_k,
                               const Rat& Psi_l) {
  if (k < 1 || l < 1) throw std::domain_error("pv_overlap_bound: scales must be positive");
  if (k == l) throw std::domain_error("pv_overlap_bound: k = l");
  if (Psi_k < 0 || Psi_l < 0) throw std::domain_error("pv_overlap_bound: negative radius");
  if (Psi_k > radius_cap(k) || Psi_l > radius_cap(l))
    throw std::domain_error("pv_overlap_bound: radius exceeds d/(2 phi(d))");
  return overlap_core(k, l, Psi_k, Psi_l);
}

std::vector<OverlapReport> overlap_ratio_scan(const std::map<std::int64_t, Rat>& Psi,
                                              std::int64_t K) {
  if (K < 1) throw std::domain_error("overlap_ratio_scan: K < 1");
  auto radius_at = [&](std::int64_t d) -> Rat {
    auto it = Psi.find(d);
    if (it == Psi.end())
      throw std::domain_error("overlap_ratio_scan: Psi undefined at " + std::to_string(d));
    return it->second;
  };
  std::vector<OverlapReport> out;
  for (std::int64_t k = 1; k <= K; ++k)
    for (std::int64_t l = k + 1; l <= K; ++l) {
      Rat pk = radius_at(k), pl = radius_at(l);
      if (pk < 0 || pl < 0 || pk > radius_cap(k) || pl > radius_cap(l)) {
        OverlapReport rep;
        rep.k = k;
        rep.l = l;
        rep.flag = RatioFlag::skipped;
        rep.skip_reason = "radius hypothesis violated";
        out.push_back(std::move(rep));
        continue;
      }
      out.push_back(overlap_core(k, l, pk, pl));
    }
  auto rank = [](const OverlapReport& r) {
    switch (r.flag) {
      case RatioFlag::positive_over_zero: return 0;
      case RatioFlag::finite: return 1;
      case RatioFlag::zero_over_zero: return 2;
      case RatioFlag::skipped: return 3;
    }
    return 3;
  };
  std::stable_sort(out.begin(), out.end(), [&](const OverlapReport& a, const OverlapReport& b) {
    int ra = rank(a), rb = rank(b);
    if (ra != rb) return ra < rb;
    if (ra == 1 && *a.ratio != *b.ratio) return *a.ratio > *b.ratio;
    if (a.k != b.k) return a.k < b.k;
    return a.l < b.l;
  });
  return out;
}

Rat chung_erdos_bound(const std::vector<Rat>& mu,
                      const std::vector<std::vector<Rat>>& mu_pair) {
  std::size_t n = mu.size();
  if (mu_pair.size() != n) throw std::domain_error("chung_erdos_bound: shape mismatch");
  Rat total = 0;
  for (const auto& v : mu) {
    if (v < 0) throw std::domain_error("chung_erdos_bound: negative measure");
    total += v;
  }
  if (total == 0) throw std::domain_error("chung_erdos_bound: zero total measure");
  Rat denom = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (mu_pair[i].size() != n) throw std::domain_error("chung_erdos_bound: shape mismatch");
    if (mu_pair[i][i] != mu[i])
      throw std::domain_error("chung_erdos_bound: diagonal must equal mu");
    for (std::size_t j = 0; j < n; ++j) {
      if (mu_pair[i][j] < 0) throw std::domain_error("chung_erdos_bound: negative entry");
      if (mu_pair[i][j] != mu_pair[j][i])
        throw std::domain_error("chung_erdos_bound: matrix not symmetric");
      denom += mu_pair[i][j];
    }
  }
  return (total * total) / denom;
}

Rat window_pair_sum(const std::map<std::int64_t, Rat>& Psi, std::int64_t X,
                    std::int64_t Y, int m) {
  if (X < 1 || Y < X) throw std::domain_error("window_pair_sum: bad range");
  if (m < 1) throw std::domain_error("window_pair_sum: m < 1");
  auto radius_at = [&](std::int64_t d) -> Rat {
    auto it = Psi.find(d);
    if (it == Psi.end())
      throw std::domain_error("window_pair_sum: Psi undefined at " + std::to_string(d));
    if (it->second < 0 || it->second > Rat(1, 2))
      throw std::domain_error("window_pair_sum: Psi outside [0, 1/2]");
    return it->second;
  };
  // Cache the 1-D sets once per scale.
  std::map<std::int64_t, ArcUnion> sets;
  for (std::int64_t d = X; d <= Y; ++d)
    sets.emplace(d, approx_set_1d(d, radius_at(d), torus_sets::SetMode::coprime));
  Rat sum = 0;
  for (std::int64_t k = X; k < Y; ++k)
    for (std::int64_t l = k + 1; l <= Y; ++l)
      sum += rat_pow(intersect(sets.at(k), sets.at(l)).measure(), static_cast<unsigned>(m));
  return sum;
}

WindowResult find_window(const std::function<Rat(std::int64_t)>& Psi_provider, int m,
                         std::int64_t X, std::int64_t Y_max) {
  if (m < 1) throw std::domain_error("find_window: m < 1");
  if (X < 1 || Y_max < X) throw std::domain_error("find_window: bad range");
  // Window ((1/2)^(m-1), (1/2)^(m-2)): for m = 1 this is (1, 2).
  Rat lower = rat_pow(Rat(1, 2), static_cast<unsigned>(m - 1));
  Rat upper = lower * 2;
  Rat sum = 0;
  for (std::int64_t d = X; d <= Y_max; ++d) {
    std::int64_t phi = static_cast<std::int64_t>(totient(static_cast<std::uint64_t>(d)));
    Rat psi = Psi_provider(d);
    if (psi < 0) throw std::domain_error("find_window: negative Psi");
    sum += rat_pow(Rat(phi) * psi / d, static_cast<unsigned>(m));
    if (sum > lower) {
      if (sum < upper) return {WindowStatus::found, d, sum};
      // First crossing already past the upper edge.
      return {WindowStatus::overshoot, d, sum};
    }
  }
  return {WindowStatus::exhausted, 0, sum};
}

Rat lower_bound_measure(std::int64_t d, const Rat& eps, int m) {
  if (d < 1) throw std::domain_error("lower_bound_measure: d < 1");
  if (m < 1) throw std::domain_error("lower_bound_measure: m < 1");
  if (eps < 0) throw std::domain_error("lower_bound_measure: negative eps");
  if (eps > radius_cap(d))
    throw std::domain_error("lower_bound_measure: eps exceeds d/(2 phi(d))");
  std::int64_t phi = static_cast<std::int64_t>(totient(static_cast<std::uint64_t>(d)));
  return rat_pow(Rat(phi) * eps / d, static_cast<unsigned>(m));
}

}  // namespace diolab::measures
