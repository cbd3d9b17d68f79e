#include "doctest.h"

#include "diolab/arc_union.hpp"
#include "oracles.hpp"

using namespace diolab;
using torus_sets::ArcUnion;

namespace {
Rat r(long n, long d) { return Rat(n, d); }
}  // namespace

TEST_CASE("canonical form basics") {
  // Same point set, different raw presentations.
  ArcUnion a = ArcUnion::from_raw({{r(1, 4), r(1, 2)}, {r(1, 2), r(3, 4)}});
  ArcUnion b = ArcUnion::from_raw({{r(1, 4), r(3, 4)}});
  CHECK(a == b);
  CHECK(a.arcs().size() == 1);

  // Wrap-around splits at 0.
  ArcUnion w = ArcUnion::from_raw({{r(-1, 8), r(1, 8)}});
  REQUIRE(w.arcs().size() == 2);
  CHECK(w.arcs()[0] == ArcUnion::Arc{r(0, 1), r(1, 8)});
  CHECK(w.arcs()[1] == ArcUnion::Arc{r(7, 8), r(1, 1)});
  CHECK(w.measure() == r(1, 4));
  CHECK(w.contains(r(0, 1)));
  CHECK(w.contains(r(15, 16)));
  CHECK(!w.contains(r(1, 8)));  // half-open right end

  // Zero-length arcs vanish; length >= 1 covers the circle.
  CHECK(ArcUnion::from_raw({{r(1, 3), r(1, 3)}}).empty());
  CHECK(ArcUnion::from_raw({{r(1, 3), r(4, 3)}}).is_full());
  CHECK(ArcUnion::from_raw({{r(0, 1), r(1, 2)}, {r(1, 2), r(1, 1)}}).is_full());

  // Adjacent across the wrap stays split but measures add.
  ArcUnion seam = ArcUnion::from_raw({{r(3, 4), r(1, 1)}, {r(0, 1), r(1, 4)}});
  CHECK(seam.arcs().size() == 2);
  CHECK(seam.measure() == r(1, 2));
  CHECK(seam == ArcUnion::from_raw({{r(-1, 4), r(1, 4)}}));
}

TEST_CASE("intersection and union set algebra") {
  ArcUnion u = ArcUnion::from_raw({{r(3, 8), r(5, 8)}});
  ArcUnion v = ArcUnion::from_raw({{r(1, 4), r(5, 12)}, {r(7, 12), r(3, 4)}});
  ArcUnion w = intersect(u, v);
  CHECK(w.measure() == r(1, 12));
  CHECK(w == ArcUnion::from_raw({{r(3, 8), r(5, 12)}, {r(7, 12), r(5, 8)}}));

  CHECK(intersect(u, ArcUnion::full()) == u);
  CHECK(intersect(u, ArcUnion()) == ArcUnion());
  CHECK(unite(u, u) == u);
  CHECK(unite(u, u).measure() == u.measure());
  CHECK(unite(u, u.complement()).is_full());
  CHECK(intersect(u, u.complement()).empty());
  CHECK(u.complement().complement() == u);
}

TEST_CASE("randomized algebra against segment oracle") {
  int checked = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    ArcUnion u = oracle::random_arc_union(2024, 2 * i, 8);
    ArcUnion v = oracle::random_arc_union(2024, 2 * i + 1, 8);
    // Canonical invariants.
    for (const auto& [l, rr] : u.arcs()) {
      CHECK(l < rr);
      CHECK(l >= 0);
      CHECK(rr <= 1);
    }
    for (std::size_t k = 0; k + 1 < u.arcs().size(); ++k)
      CHECK(u.arcs()[k].second < u.arcs()[k + 1].first);
    CHECK(u.measure() >= 0);
    CHECK(u.measure() <= 1);
    CHECK(u.measure() == oracle::measure_by_segments(u));

    ArcUnion inter = intersect(u, v);
    ArcUnion uni = unite(u, v);
    CHECK(inter.measure() == oracle::intersection_by_segments(u, v));
    // Inclusion-exclusion, exact.
    CHECK(inter.measure() + uni.measure() == u.measure() + v.measure());
    ++checked;
  }
  CHECK(checked == 200);
}
