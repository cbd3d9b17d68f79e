#pragma once

#include "diolab/numeric.hpp"

#include <utility>
#include <vector>

namespace diolab::torus_sets {

/// Finite union of half-open arcs [l, r) on the circle T = [0, 1), kept in
/// canonical form: endpoints in [0, 1], arcs sorted, pairwise disjoint,
/// non-adjacent, each of positive length. Wrap-around arcs are split at 0,
/// so equality of canonical forms is equality of point sets.
class ArcUnion {
 public:
  using Arc = std::pair<Rat, Rat>;

  ArcUnion() = default;

  /// Arcs given as intervals on R of length >= 0; each is wrapped mod 1.
  /// A length >= 1 covers the whole circle.
  static ArcUnion from_raw(const std::vector<Arc>& raw);
  static ArcUnion full();

  const std::vector<Arc>& arcs() const { return arcs_; }
  bool empty() const { return arcs_.empty(); }
  bool is_full() const;
  Rat measure() const;
  bool contains(const Rat& x) const;

  friend ArcUnion intersect(const ArcUnion& u, const ArcUnion& v);
  friend ArcUnion unite(const ArcUnion& u, const ArcUnion& v);
  ArcUnion complement() const;

  bool operator==(const ArcUnion& o) const { return arcs_ == o.arcs_; }
  bool operator!=(const ArcUnion& o) const { return arcs_ != o.arcs_; }

 private:
  // Segments with 0 <= l < r <= 1, sorted, disjoint, maximally merged
  // (except across the split point 0).
  std::vector<Arc> arcs_;
  static ArcUnion canonicalize(std::vector<Arc> segs);
};

ArcUnion intersect(const ArcUnion& u, const ArcUnion& v);
ArcUnion unite(const ArcUnion& u, const ArcUnion& v);

}  // namespace diolab::torus_sets
