#include "slitsurf/flows.hpp"

namespace slitsurf {

Surface apply_matrix(const Surface& s, const Mat2& m) {
  if (sgn(m.det()) <= 0) throw SurfaceError("matrix action requires positive determinant");
  Surface out = s;
  for (auto& t : out.tris)
    for (auto& e : t.e) e = m * e;
  return out;
}

Surface horocycle(const Surface& s, const Rat& time) { return apply_matrix(s, horocycle_mat(time)); }

Surface teichmuller(const Surface& s, const Rat& lambda) {
  return apply_matrix(s, dilation_mat(lambda));
}

NormalizedSlit normalize_slit_horizontal(const SlitSurface& s) {
  Vec2 beta = s.slit_hol();
  Mat2 m = align_to_horizontal(beta);
  NormalizedSlit out;
  out.map = m;
  out.area_scale = m.det();
  out.s = SlitSurface{apply_matrix(s.s, m), s.slit_edge};
  return out;
}

}  // namespace slitsurf
