#include "diolab/arc_union.hpp"

#include <algorithm>

namespace diolab::torus_sets {

ArcUnion ArcUnion::full() {
  ArcUnion u;
  u.arcs_.emplace_back(Rat(0), Rat(1));
  return u;
}

bool ArcUnion::is_full() const {
  return arcs_.size() == 1 && arcs_[0].first == 0 && arcs_[0].second == 1;
}

ArcUnion ArcUnion::canonicalize(std::vector<Arc> segs) {
  // Input: segments with 0 <= l < r <= 1. Sort and merge overlapping or
  // adjacent ones; [x, 1) and [0, y) stay split (the wrap point is a seam,
  // not a gap, and the split keeps the form unique).
  std::erase_if(segs, [](const Arc& a) { return a.first >= a.second; });
  std::sort(segs.begin(), segs.end());
  ArcUnion out;
  for (auto& s : segs) {
    if (!out.arcs_.empty() && s.first <= out.arcs_.back().second) {
      if (s.second > out.arcs_.back().second) out.arcs_.back().second = s.second;
    } else {
      out.arcs_.push_back(s);
    }
  }
  return out;
}

ArcUnion ArcUnion::from_raw(const std::vector<Arc>& raw) {
  std::vector<Arc> segs;
  for (const auto& [l, r] : raw) {
    if (r < l) throw std::domain_error("ArcUnion::from_raw: right endpoint below left");
    if (r - l >= 1) return full();
    if (r == l) continue;
    Rat l0 = rat_mod1(l);
    Rat r0 = l0 + (r - l);
    if (r0 <= 1) {
      segs.emplace_back(l0, r0);
    } else {
      segs.emplace_back(l0, Rat(1));
      segs.emplace_back(Rat(0), r0 - 1);
    }
  }
  return canonicalize(std::move(segs));
}

Rat ArcUnion::measure() const {
  Rat total = 0;
  for (const auto& [l, r] : arcs_) total += r - l;
  return total;
}

bool ArcUnion::contains(const Rat& x) const {
  Rat x0 = rat_mod1(x);
  // First arc with left endpoint > x0 is past the candidate.
  auto it = std::upper_bound(arcs_.begin(), arcs_.end(), x0,
                             [](const Rat& v, const Arc& a) { return v < a.first; });
  if (it == arcs_.begin()) return false;
  --it;
  return x0 < it->second;
}

ArcUnion intersect(const ArcUnion& u, const ArcUnion& v) {
  ArcUnion out;
  std::size_t i = 0, j = 0;
  while (i < u.arcs_.size() && j < v.arcs_.size()) {
    const auto& a = u.arcs_[i];
    const auto& b = v.arcs_[j];
    Rat l = std::max(a.first, b.first);
    Rat r = std::min(a.second, b.second);
    if (l < r) out.arcs_.emplace_back(l, r);
    // Advance whichever arc ends first; intersection pieces arrive sorted
    // and disjoint, and seams at 0 are preserved, so this is canonical.
    if (a.second <= b.second)
      ++i;
    else
      ++j;
  }
  return out;
}

ArcUnion unite(const ArcUnion& u, const ArcUnion& v) {
  std::vector<ArcUnion::Arc> segs = u.arcs_;
  segs.insert(segs.end(), v.arcs_.begin(), v.arcs_.end());
  return ArcUnion::canonicalize(std::move(segs));
}

ArcUnion ArcUnion::complement() const {
  ArcUnion out;
  Rat prev = 0;
  for (const auto& [l, r] : arcs_) {
    if (l > prev) out.arcs_.emplace_back(prev, l);
    prev = r;
  }
  if (prev < 1) out.arcs_.emplace_back(prev, Rat(1));
  return out;
}

}  // namespace diolab::torus_sets
