#pragma once

// The GL2+ action on surfaces: general matrices, the horocycle shear, the
// diagonal dilation, and slit normalization. These touch only edge vectors;
// the combinatorics (gluing, vertices, involution) are untouched.

#include "slitsurf/surface.hpp"

namespace slitsurf {

Surface apply_matrix(const Surface& s, const Mat2& m);         // det > 0 required
Surface horocycle(const Surface& s, const Rat& time);          // [[1,s],[0,1]]
Surface teichmuller(const Surface& s, const Rat& lambda);      // [[l,0],[0,1/l]]

// Applies align_to_horizontal(hol of the slit's first half-edge); returns the
// transformed surface and the exact area scale factor |beta|^2.
struct NormalizedSlit {
  SlitSurface s;
  Mat2 map;
  Rat area_scale;
};
NormalizedSlit normalize_slit_horizontal(const SlitSurface& s);

}  // namespace slitsurf
