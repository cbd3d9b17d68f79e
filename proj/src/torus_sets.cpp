#include "diolab/torus_sets.hpp"

#include "diolab/parallel.hpp"
#include "diolab/rng.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <cmath>

namespace diolab::torus_sets {

using arith::totient;
using arith::vec_gcd;

ArcUnion approx_set_1d(std::int64_t d, const Rat& epsilon, SetMode mode,
                       const std::optional<std::vector<std::int64_t>>& numerator_filter) {
  if (d < 1) throw std::domain_error("approx_set_1d: d < 1");
  if (epsilon < 0) throw std::domain_error("approx_set_1d: negative epsilon");
  if (mode == SetMode::filtered && !numerator_filter)
    throw std::domain_error("approx_set_1d: filtered mode requires a numerator filter");
  if (epsilon == 0) return ArcUnion();

  std::vector<std::int64_t> nums;
  switch (mode) {
    case SetMode::plain:
      for (std::int64_t p = 0; p < d; ++p) nums.push_back(p);
      break;
    case SetMode::coprime:
      for (std::int64_t p = 0; p < d; ++p)
        if (std::gcd(p, d) == 1) nums.push_back(p);
      break;
    case SetMode::filtered:
      for (std::int64_t p : *numerator_filter) {
        if (p < 0 || p >= d || std::gcd(p, d) != 1)
          throw std::domain_error(
              "approx_set_1d: filter entries must be residues coprime to d");
        nums.push_back(p);
      }
      std::sort(nums.begin(), nums.end());
      nums.erase(std::unique(nums.begin(), nums.end()), nums.end());
      break;
  }
  if (nums.empty()) return ArcUnion();
  // Arc radius at scale d is epsilon/d; epsilon >= d/2 covers the circle.
  if (2 * epsilon >= d) return ArcUnion::full();

  Rat r = epsilon / d;
  std::vector<ArcUnion::Arc> raw;
  raw.reserve(nums.size());
  for (std::int64_t p : nums) {
    Rat center = Rat(p, d);
    raw.emplace_back(center - r, center + r);
  }
  return ArcUnion::from_raw(raw);
}

std::vector<std::int64_t> select_separated_numerators(std::int64_t d) {
  if (d < 1) throw std::domain_error("select_separated_numerators: d < 1");
  if (d == 1) return {0};
  std::int64_t phi = static_cast<std::int64_t>(totient(static_cast<std::uint64_t>(d)));
  std::vector<std::int64_t> kept;
  // Circle distance |p1/d - p2/d| >= 1/phi(d)  <=>  min(|p1-p2|, d-|p1-p2|) * phi >= d.
  auto far_enough = [&](std::int64_t p1, std::int64_t p2) {
    std::int64_t diff = p1 > p2 ? p1 - p2 : p2 - p1;
    std::int64_t circ = std::min(diff, d - diff);
    return circ * phi >= d;
  };
  for (std::int64_t p = 0; p < d; ++p) {
    if (std::gcd(p, d) != 1) continue;
    if (kept.empty()) {
      kept.push_back(p);
      continue;
    }
    // Ascending sweep: only the last kept (linear) and first kept (wrap)
    // can be too close.
    if (far_enough(p, kept.back()) && far_enough(p, kept.front())) kept.push_back(p);
  }
  return kept;
}

BallFamily1D BallFamily1D::make(std::vector<Rat> centers, Rat radius, bool claim_disjoint) {
  if (radius <= 0) throw std::domain_error("BallFamily1D: radius must be positive");
  for (const auto& c : centers)
    if (c < 0 || c >= 1) throw std::domain_error("BallFamily1D: center outside [0,1)");
  if (claim_disjoint) {
    std::vector<Rat> sorted = centers;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      const Rat& a = sorted[i];
      const Rat& b = sorted[(i + 1) % sorted.size()];
      if (sorted.size() < 2) break;
      Rat gap = (i + 1 == sorted.size()) ? Rat(b + 1 - a) : Rat(b - a);
      // Open arcs of radius r are disjoint iff centers are >= 2r apart.
      if (gap < 2 * radius)
        throw std::domain_error("BallFamily1D: claimed disjoint but balls overlap");
    }
  }
  BallFamily1D f;
  f.centers = std::move(centers);
  f.radius = std::move(radius);
  f.disjoint = claim_disjoint;
  return f;
}

ArcUnion BallFamily1D::to_arc_union() const {
  std::vector<ArcUnion::Arc> raw;
  raw.reserve(centers.size());
  for (const auto& c : centers) raw.emplace_back(c - radius, c + radius);
  return ArcUnion::from_raw(raw);
}

BallFamily1D scale_concentric(const BallFamily1D& f, const Rat& sigma) {
  if (sigma <= 0 || sigma > 1)
    throw std::domain_error("scale_concentric: sigma outside (0, 1]");
  BallFamily1D out = f;
  out.radius = f.radius * sigma;
  return out;
}

void ApproxSet::validate() const {
  if (n < 1 || m < 1) throw std::domain_error("ApproxSet: n, m must be positive");
  if (q.dim() != n) throw std::domain_error("ApproxSet: direction length != n");
  if (q.is_zero()) throw std::domain_error("ApproxSet: zero direction");
  if (epsilon < 0) throw std::domain_error("ApproxSet: negative epsilon");
  if (mode == SetMode::filtered && !numerator_filter)
    throw std::domain_error("ApproxSet: filtered mode requires a numerator filter");
}

ArcUnion ApproxSet::reduced() const {
  validate();
  return approx_set_1d(vec_gcd(q), epsilon, mode, numerator_filter);
}

namespace {

// dist(t, gZ) < e for the stripe test, exact.
bool near_lattice(const Rat& t, std::int64_t g, const Rat& e) {
  Rat u = t / g;
  Rat frac = rat_mod1(u);
  Rat flip = 1 - frac;
  Rat dist = std::min(frac, flip) * g;
  return dist < e;
}

}  // namespace

StripeEstimate stripe_independence_estimate(const IntVec& q1, const IntVec& q2,
                                            const std::vector<Rat>& v1,
                                            const std::vector<Rat>& v2, const Rat& e1,
                                            const Rat& e2, std::int64_t samples,
                                            std::uint64_t seed, unsigned threads) {
  int n = q1.dim();
  if (n < 2) throw std::domain_error("stripe_independence_estimate: n < 2");
  if (q2.dim() != n) throw std::domain_error("stripe_independence_estimate: dim mismatch");
  if (static_cast<int>(v1.size()) != n || static_cast<int>(v2.size()) != n)
    throw std::domain_error("stripe_independence_estimate: shift length != n");
  if (e1 <= 0 || e2 <= 0)
    throw std::domain_error("stripe_independence_estimate: widths must be positive");
  if (samples < 1) throw std::domain_error("stripe_independence_estimate: samples < 1");
  if (q1.is_zero() || q2.is_zero())
    throw std::domain_error("stripe_independence_estimate: zero direction");
  // Linear independence over Q: some 2x2 minor is nonzero.
  bool independent = false;
  for (int i = 0; i < n && !independent; ++i)
    for (int j = i + 1; j < n && !independent; ++j) {
      Int minor = Int(q1.c[static_cast<std::size_t>(i)]) * q2.c[static_cast<std::size_t>(j)] -
                  Int(q1.c[static_cast<std::size_t>(j)]) * q2.c[static_cast<std::size_t>(i)];
      if (minor != 0) independent = true;
    }
  if (!independent)
    throw std::domain_error("stripe_independence_estimate: directions linearly dependent");

  std::int64_t g1 = vec_gcd(q1), g2 = vec_gcd(q2);
  std::atomic<std::int64_t> hits{0};
  parallel_chunks(samples, threads, [&](std::int64_t b, std::int64_t end) {
    std::int64_t local = 0;
    for (std::int64_t idx = b; idx < end; ++idx) {
      // One dyadic point per sample index; slots are coordinates.
      std::vector<Rat> x(static_cast<std::size_t>(n));
      for (int c = 0; c < n; ++c)
        x[static_cast<std::size_t>(c)] = rng::unit_dyadic(
            seed, /*stream=*/1, static_cast<std::uint64_t>(idx), static_cast<std::uint64_t>(c));
      Rat t1 = 0, t2 = 0;
      for (int c = 0; c < n; ++c) {
        t1 += Rat(q1.c[static_cast<std::size_t>(c)]) * (x[static_cast<std::size_t>(c)] -
                                                        v1[static_cast<std::size_t>(c)]);
        t2 += Rat(q2.c[static_cast<std::size_t>(c)]) * (x[static_cast<std::size_t>(c)] -
                                                        v2[static_cast<std::size_t>(c)]);
      }
      if (near_lattice(t1, g1, e1) && near_lattice(t2, g2, e2)) ++local;
    }
    hits += local;
  });

  StripeEstimate out;
  out.samples = samples;
  out.seed = seed;
  double f = static_cast<double>(hits.load()) / static_cast<double>(samples);
  out.estimate = f;
  out.stderr_ = std::sqrt(f * (1.0 - f) / static_cast<double>(samples));
  Rat m1 = std::min(Rat(1), Rat(2 * e1 / g1));
  Rat m2 = std::min(Rat(1), Rat(2 * e2 / g2));
  out.product = m1 * m2;
  return out;
}

}  // namespace diolab::torus_sets
