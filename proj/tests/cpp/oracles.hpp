#pragma once

// Independent reference implementations used only by tests. Everything here
// recomputes results by a different route than the library (endpoint walks
// and midpoint membership instead of sweep merging), so agreement is
// meaningful.

#include "diolab/arc_union.hpp"
#include "diolab/rng.hpp"

#include <algorithm>
#include <vector>

namespace oracle {

using diolab::Rat;
using diolab::torus_sets::ArcUnion;

// Measure by elementary segmentation: split [0,1) at every endpoint and add
// the lengths of segments whose midpoint lies inside.
inline Rat measure_by_segments(const ArcUnion& u) {
  std::vector<Rat> cuts{Rat(0), Rat(1)};
  for (const auto& [l, r] : u.arcs()) {
    cuts.push_back(l);
    cuts.push_back(r);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  Rat total = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Rat mid = (cuts[i] + cuts[i + 1]) / 2;
    if (u.contains(mid)) total += cuts[i + 1] - cuts[i];
  }
  return total;
}

// Intersection measure the same way, from both membership predicates.
inline Rat intersection_by_segments(const ArcUnion& u, const ArcUnion& v) {
  std::vector<Rat> cuts{Rat(0), Rat(1)};
  for (const auto& [l, r] : u.arcs()) {
    cuts.push_back(l);
    cuts.push_back(r);
  }
  for (const auto& [l, r] : v.arcs()) {
    cuts.push_back(l);
    cuts.push_back(r);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  Rat total = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Rat mid = (cuts[i] + cuts[i + 1]) / 2;
    if (u.contains(mid) && v.contains(mid)) total += cuts[i + 1] - cuts[i];
  }
  return total;
}

// Random arc union: up to max_arcs arcs with dyadic endpoints of the given
// bit depth; raw arcs may overlap and wrap.
inline ArcUnion random_arc_union(std::uint64_t seed, std::uint64_t index, int max_arcs,
                                 unsigned bits = 10) {
  std::uint64_t k = diolab::rng::below(seed, 77, index, 0, static_cast<std::uint64_t>(max_arcs) + 1);
  std::vector<ArcUnion::Arc> raw;
  std::uint64_t den = 1ULL << bits;
  for (std::uint64_t a = 0; a < k; ++a) {
    std::uint64_t l = diolab::rng::below(seed, 77, index, 2 * a + 1, den);
    std::uint64_t len = diolab::rng::below(seed, 77, index, 2 * a + 2, den / 2);
    Rat left(static_cast<std::int64_t>(l), static_cast<std::int64_t>(den));
    Rat right = left + Rat(static_cast<std::int64_t>(len), static_cast<std::int64_t>(den));
    raw.emplace_back(left, right);
  }
  return ArcUnion::from_raw(raw);
}

}  // namespace oracle
