#pragma once

#include "slitsurf/surface.hpp"

namespace slitsurf {

// An oriented saddle connection: the geodesic leaving the corner `start`
// with displacement `hol`, arriving at the corner `end` (the sector the
// segment points back into). The pair (start corner, holonomy) determines
// the segment; `end` is carried so reversal and involution images stay O(1).
struct SaddleConn {
  Corner start, end;
  Vec2 hol;

  SaddleConn() = default;
  SaddleConn(Corner s, Corner e, Vec2 h) : start(s), end(e), hol(std::move(h)) {}

  SaddleConn reversed() const { return {end, start, -hol}; }
  bool same_oriented(const SaddleConn& o) const { return start == o.start && hol == o.hol; }
  bool same_unoriented(const SaddleConn& o) const {
    return same_oriented(o) || reversed().same_oriented(o);
  }
};

// Unoriented representative: holonomy in the open upper half plane, or on
// the positive x-axis.
inline SaddleConn canonical(const SaddleConn& sc) {
  return upper_canonical(sc.hol) ? sc : sc.reversed();
}

}  // namespace slitsurf
