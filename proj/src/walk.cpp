#include "slitsurf/walk.hpp"

#include <algorithm>
#include <map>

namespace slitsurf {

namespace {

bool in_closed_sector(const Vec2& a, const Vec2& b, const Vec2& d) {
  return sgn(cross(a, d)) >= 0 && sgn(cross(d, b)) >= 0;
}

// outgoing boundary rays of the corner (t,k): a = e_k, b = -e_{k+2}
Vec2 corner_ray_a(const Surface& s, const Corner& c) { return s.tris[c.tri].e[c.k]; }
Vec2 corner_ray_b(const Surface& s, const Corner& c) { return -s.tris[c.tri].e[(c.k + 2) % 3]; }

bool is_slit_he(const Surface& s, std::optional<int> slit_he, int h) {
  if (!slit_he) return false;
  return h == *slit_he || h == s.glue[*slit_he];
}

}  // namespace

std::optional<SegmentWalk> develop_segment(const Surface& s, const Corner& start, const Vec2& hol,
                                           std::optional<int> slit_he, std::string* why) {
  auto fail = [&](const std::string& m) -> std::optional<SegmentWalk> {
    if (why) *why = m;
    return std::nullopt;
  };
  if (hol.is_zero()) return fail("zero holonomy");
  Vec2 a = corner_ray_a(s, start), b = corner_ray_b(s, start);
  if (!in_closed_sector(a, b, hol)) return fail("direction not in corner sector");
  if (sgn(cross(a, hol)) == 0) {
    if (sgn(dot(a, hol)) <= 0) return fail("direction not in corner sector");
    if (hol == a) return SegmentWalk{{start.tri, (start.k + 1) % 3}, {}};
    return fail(norm_sq(hol) < norm_sq(a) ? "endpoint not a singularity" : "interior singularity");
  }
  if (sgn(cross(hol, b)) == 0) {
    if (sgn(dot(b, hol)) <= 0) return fail("direction not in corner sector");
    if (hol == b) return SegmentWalk{{start.tri, (start.k + 2) % 3}, {}};
    return fail(norm_sq(hol) < norm_sq(b) ? "endpoint not a singularity" : "interior singularity");
  }

  SegmentWalk out;
  int ct = start.tri;
  int entry = -1;  // side we entered through, -1 at the start corner
  Vec2 shift = -s.tris[ct].ref(start.k);
  Rat t_lo(0);
  const Rat hol_sq = norm_sq(hol);
  for (long step = 0; step < 4000000; ++step) {
    std::array<Vec2, 3> P;
    for (int i = 0; i < 3; ++i) P[i] = s.tris[ct].ref(i) + shift;
    // vertex events on the segment
    for (int i = 0; i < 3; ++i) {
      if (sgn(cross(P[i], hol)) != 0) continue;
      Rat pr = dot(P[i], hol);
      if (sgn(pr) <= 0) continue;
      if (pr == hol_sq) {  // arrival at this vertex
        out.end = {ct, i};
        return out;
      }
      if (pr < hol_sq) {
        // a vertex strictly inside the segment, but only if ahead of t_lo
        if (pr > t_lo * hol_sq) return fail("interior singularity");
      }
    }
    // first edge crossing ahead
    int best_side = -1;
    Rat best_u;
    for (int side = 0; side < 3; ++side) {
      if (side == entry) continue;
      const Vec2& Pp = P[side];
      Vec2 d = s.tris[ct].e[side];
      Rat den = cross(hol, d);
      if (sgn(den) == 0) continue;
      Rat u = cross(Pp, d) / den;
      if (!(u > t_lo) || u > 1) continue;
      Rat w = cross(Pp, hol) / -den;  // u*hol = P + w*d  =>  cross with hol
      if (!(sgn(w) > 0 && w < 1)) continue;
      if (best_side < 0 || u < best_u) {
        best_side = side;
        best_u = u;
      }
    }
    if (best_side < 0) return fail("endpoint not a singularity");
    if (best_u == 1) return fail("endpoint not a singularity");
    int h = he_index(ct, best_side);
    if (is_slit_he(s, slit_he, h)) return fail("crosses slit");
    out.crossed.push_back(h);
    int g = s.glue[h];
    int nt = g / 3, ns = g % 3;
    // placed V'(ns) == P[(best_side+1)%3]
    shift = P[(best_side + 1) % 3] - s.tris[nt].ref(ns);
    ct = nt;
    entry = ns;
    t_lo = best_u;
  }
  return fail("segment walk budget exceeded");
}

bool check_saddle_connection(const Surface& s, const SaddleConn& sc, std::optional<int> slit_he) {
  auto dev = develop_segment(s, sc.start, sc.hol, slit_he);
  if (!dev) return false;
  return dev->end == sc.end;
}

bool quad_strictly_convex(const Surface& s, int h) {
  int t1 = h / 3, s1 = h % 3;
  int g = s.glue[h];
  int t2 = g / 3, s2 = g % 3;
  Vec2 A = s.tris[t1].ref(s1);
  Vec2 B = s.tris[t1].ref((s1 + 1) % 3);
  Vec2 C = s.tris[t1].ref((s1 + 2) % 3);
  Vec2 D = A + s.tris[t2].e[(s2 + 1) % 3];
  // ccw quad A, D, B, C
  return sgn(cross(D - A, B - D)) > 0 && sgn(cross(B - D, C - B)) > 0 &&
         sgn(cross(C - B, A - C)) > 0 && sgn(cross(A - C, D - A)) > 0;
}

namespace {

// quad bookkeeping shared by flip variants
struct QuadInfo {
  int t1, s1, t2, s2;
  Vec2 A, B, C, D;
  int idA, idB, idC, idD;
  std::array<int, 4> outer_old;  // AD, DB, BC, CA half-edges
};

QuadInfo quad_info(const Surface& s, int h) {
  QuadInfo q;
  q.t1 = h / 3;
  q.s1 = h % 3;
  int g = s.glue[h];
  q.t2 = g / 3;
  q.s2 = g % 3;
  q.A = s.tris[q.t1].ref(q.s1);
  q.B = s.tris[q.t1].ref((q.s1 + 1) % 3);
  q.C = s.tris[q.t1].ref((q.s1 + 2) % 3);
  q.D = q.A + s.tris[q.t2].e[(q.s2 + 1) % 3];
  q.idA = s.vclass[he_index(q.t1, q.s1)];
  q.idB = s.vclass[he_index(q.t1, (q.s1 + 1) % 3)];
  q.idC = s.vclass[he_index(q.t1, (q.s1 + 2) % 3)];
  q.idD = s.vclass[he_index(q.t2, (q.s2 + 2) % 3)];
  q.outer_old = {he_index(q.t2, (q.s2 + 1) % 3), he_index(q.t2, (q.s2 + 2) % 3),
                 he_index(q.t1, (q.s1 + 1) % 3), he_index(q.t1, (q.s1 + 2) % 3)};
  return q;
}

// quad positions: 0=A 1=B 2=C 3=D
int quad_position_of_corner(const QuadInfo& q, const Corner& c) {
  if (c.tri == q.t1) {
    if (c.k == q.s1) return 0;
    if (c.k == (q.s1 + 1) % 3) return 1;
    return 2;
  }
  if (c.k == q.s2) return 1;
  if (c.k == (q.s2 + 1) % 3) return 0;
  return 3;
}

// new corner for a quad position and a local direction, after the flip
Corner corner_after_flip(const Surface& s, int t1, int t2, int pos, const Vec2& d) {
  auto sector_has = [&](const Corner& c, const Vec2& dir) {
    return in_closed_sector(corner_ray_a(s, c), corner_ray_b(s, c), dir);
  };
  switch (pos) {
    case 0: return {t1, 0};
    case 1: return {t2, 1};
    case 2: {
      Corner c1{t1, 2}, c2{t2, 2};
      // along the new diagonal (ray a of c2) prefer the diagonal's own corner
      if (sgn(cross(corner_ray_a(s, c2), d)) == 0 && sgn(dot(corner_ray_a(s, c2), d)) > 0) return c2;
      if (sector_has(c1, d)) return c1;
      if (sector_has(c2, d)) return c2;
      throw WalkError("corner relocation failed at quad position C");
    }
    default: {
      Corner c1{t1, 1}, c2{t2, 0};
      if (sgn(cross(corner_ray_a(s, c1), d)) == 0 && sgn(dot(corner_ray_a(s, c1), d)) > 0) return c1;
      if (sector_has(c2, d)) return c2;
      if (sector_has(c1, d)) return c1;
      throw WalkError("corner relocation failed at quad position D");
    }
  }
}

struct PendingCorner {
  SaddleConn* sc;
  bool is_start;
  int pos;
};

int apply_flip(Surface& s, int h, Tracked& tracked) {
  if (!quad_strictly_convex(s, h)) throw WalkError("flip on non-convex quad");
  QuadInfo q = quad_info(s, h);
  int g = s.glue[h];

  // collect tracked corners sitting in the quad
  std::vector<PendingCorner> pend;
  for (SaddleConn* sc : tracked.scs) {
    if (sc->start.tri == q.t1 || sc->start.tri == q.t2)
      pend.push_back({sc, true, quad_position_of_corner(q, sc->start)});
    if (sc->end.tri == q.t1 || sc->end.tri == q.t2)
      pend.push_back({sc, false, quad_position_of_corner(q, sc->end)});
  }
  // remap of outer half-edges
  std::map<int, int> remap;
  remap[q.outer_old[0]] = he_index(q.t1, 0);  // AD
  remap[q.outer_old[1]] = he_index(q.t2, 0);  // DB
  remap[q.outer_old[2]] = he_index(q.t2, 1);  // BC
  remap[q.outer_old[3]] = he_index(q.t1, 2);  // CA
  std::array<int, 4> old_partner{};
  for (int i = 0; i < 4; ++i) old_partner[i] = s.glue[q.outer_old[i]];

  // rewrite triangles
  s.tris[q.t1].e = {q.D - q.A, q.C - q.D, q.A - q.C};
  s.tris[q.t2].e = {q.B - q.D, q.C - q.B, q.D - q.C};
  s.vclass[he_index(q.t1, 0)] = q.idA;
  s.vclass[he_index(q.t1, 1)] = q.idD;
  s.vclass[he_index(q.t1, 2)] = q.idC;
  s.vclass[he_index(q.t2, 0)] = q.idD;
  s.vclass[he_index(q.t2, 1)] = q.idB;
  s.vclass[he_index(q.t2, 2)] = q.idC;

  // new diagonal
  s.glue[he_index(q.t1, 1)] = he_index(q.t2, 2);
  s.glue[he_index(q.t2, 2)] = he_index(q.t1, 1);
  // outer sides
  for (int i = 0; i < 4; ++i) {
    int nh = remap[q.outer_old[i]];
    int p = old_partner[i];
    auto it = remap.find(p);
    int np = it == remap.end() ? p : it->second;
    s.glue[nh] = np;
    s.glue[np] = nh;
  }

  for (int* hp : tracked.halfedges) {
    if (*hp == h || *hp == g) throw WalkError("tracked half-edge was flipped away");
    auto it = remap.find(*hp);
    if (it != remap.end()) *hp = it->second;
  }
  for (auto& pc : pend) {
    Corner& c = pc.is_start ? pc.sc->start : pc.sc->end;
    Vec2 d = pc.is_start ? pc.sc->hol : -pc.sc->hol;
    c = corner_after_flip(s, q.t1, q.t2, pc.pos, d);
  }
  return he_index(q.t1, 1);
}

}  // namespace

int flip_halfedge(Surface& s, int h, Tracked& tracked) { return apply_flip(s, h, tracked); }

bool flip_equivariant(Surface& s, Involution& tau, int h, Tracked& tracked) {
  int g = s.glue[h];
  int hp = tau.edge_map[h];
  if (hp == g || hp == h) {
    // invariant edge: single flip, slot shift by one
    int t1 = h / 3, t2 = g / 3;
    if (tau.tri_map[t1] != t2) throw InvolutionError("involution inconsistent at invariant edge");
    apply_flip(s, h, tracked);
    for (int sdx = 0; sdx < 3; ++sdx) {
      tau.edge_map[he_index(t1, sdx)] = he_index(t2, (sdx + 1) % 3);
      tau.edge_map[he_index(t2, (sdx + 1) % 3)] = he_index(t1, sdx);
    }
    return true;
  }
  int t1 = h / 3, t2 = g / 3;
  int tt1 = hp / 3, tt2 = s.glue[hp] / 3;
  if (t1 == tt1 || t1 == tt2 || t2 == tt1 || t2 == tt2) return false;
  if (!quad_strictly_convex(s, h) || !quad_strictly_convex(s, hp))
    throw WalkError("equivariant flip on non-convex quad");
  apply_flip(s, h, tracked);
  apply_flip(s, hp, tracked);
  for (int sdx = 0; sdx < 3; ++sdx) {
    tau.edge_map[he_index(t1, sdx)] = he_index(tt1, sdx);
    tau.edge_map[he_index(tt1, sdx)] = he_index(t1, sdx);
    tau.edge_map[he_index(t2, sdx)] = he_index(tt2, sdx);
    tau.edge_map[he_index(tt2, sdx)] = he_index(t2, sdx);
  }
  return true;
}

namespace {

int along_edge_halfedge(const Surface& s, const SaddleConn& gamma) {
  Vec2 a = corner_ray_a(s, gamma.start);
  if (sgn(cross(a, gamma.hol)) == 0 && sgn(dot(a, gamma.hol)) > 0)
    return he_index(gamma.start.tri, gamma.start.k);
  return he_index(gamma.start.tri, (gamma.start.k + 2) % 3);
}

}  // namespace

int insert_edge_sc(Surface& s, SaddleConn gamma, Tracked& tracked, std::optional<int> slit_he,
                   int max_flips) {
  Tracked all = tracked;
  all.scs.push_back(&gamma);
  for (int iter = 0; iter < max_flips; ++iter) {
    std::string why;
    auto dev = develop_segment(s, gamma.start, gamma.hol, slit_he, &why);
    if (!dev) throw WalkError("edge insertion: " + why);
    if (dev->crossed.empty()) return along_edge_halfedge(s, gamma);
    bool flipped = false;
    for (int h : dev->crossed) {
      if (is_slit_he(s, slit_he, h)) throw WalkError("edge insertion would flip the slit");
      if (quad_strictly_convex(s, h)) {
        apply_flip(s, h, all);
        flipped = true;
        break;
      }
    }
    if (!flipped) throw WalkError("edge insertion stuck: no convex crossed quad");
  }
  throw WalkError("edge insertion budget exceeded");
}

PairInsert insert_edge_pair_equivariant(Surface& s, Involution& tau, const SaddleConn& sigma,
                                        Tracked& tracked, int max_flips) {
  SaddleConn sig = sigma;
  SaddleConn tsig = tau_image(tau, sigma);
  Tracked all = tracked;
  all.scs.push_back(&sig);
  all.scs.push_back(&tsig);
  for (int iter = 0; iter < max_flips; ++iter) {
    std::string why;
    auto devS = develop_segment(s, sig.start, sig.hol, std::nullopt, &why);
    if (!devS) throw WalkError("pair insertion (sigma): " + why);
    const std::vector<int>* crossed = &devS->crossed;
    std::optional<SegmentWalk> devT;
    if (devS->crossed.empty()) {
      devT = develop_segment(s, tsig.start, tsig.hol, std::nullopt, &why);
      if (!devT) throw WalkError("pair insertion (tau sigma): " + why);
      if (devT->crossed.empty())
        return {along_edge_halfedge(s, sig), along_edge_halfedge(s, tsig)};
      crossed = &devT->crossed;
    }
    bool flipped = false;
    for (int h : *crossed) {
      if (!quad_strictly_convex(s, h)) continue;
      if (flip_equivariant(s, tau, h, all)) {
        flipped = true;
        break;
      }
    }
    if (!flipped) throw WalkError("equivariant insertion stuck");
  }
  throw WalkError("equivariant insertion budget exceeded");
}

RayHit ray_first_event(const Surface& s, const Corner& start, const Vec2& dir,
                       std::optional<int> slit_he, long max_steps) {
  if (dir.is_zero()) throw WalkError("zero ray direction");
  Vec2 a = corner_ray_a(s, start), b = corner_ray_b(s, start);
  if (!in_closed_sector(a, b, dir)) throw WalkError("ray direction not in corner sector");
  int ct = start.tri;
  int entry = -1;
  Vec2 shift = -s.tris[ct].ref(start.k);
  Rat t_lo(0);
  Rat dir_sq = norm_sq(dir);
  for (long step = 0; step < max_steps; ++step) {
    std::array<Vec2, 3> P;
    for (int i = 0; i < 3; ++i) P[i] = s.tris[ct].ref(i) + shift;
    // earliest vertex event in this triangle
    int vhit = -1;
    Rat vu;
    for (int i = 0; i < 3; ++i) {
      if (sgn(cross(P[i], dir)) != 0) continue;
      Rat u = dot(P[i], dir) / dir_sq;
      if (!(u > t_lo)) continue;
      if (vhit < 0 || u < vu) {
        vhit = i;
        vu = u;
      }
    }
    int best_side = -1;
    Rat best_u;
    for (int side = 0; side < 3; ++side) {
      if (side == entry) continue;
      Vec2 d = s.tris[ct].e[side];
      Rat den = cross(dir, d);
      if (sgn(den) == 0) continue;
      Rat u = cross(P[side], d) / den;
      if (!(u > t_lo)) continue;
      Rat w = cross(P[side], dir) / -den;
      if (!(sgn(w) > 0 && w < 1)) continue;
      if (best_side < 0 || u < best_u) {
        best_side = side;
        best_u = u;
      }
    }
    if (vhit >= 0 && (best_side < 0 || vu <= best_u)) {
      RayHit r;
      r.hit_vertex = true;
      r.point = P[vhit];
      r.corner = {ct, vhit};
      return r;
    }
    if (best_side < 0) throw WalkError("ray walk found no continuation");
    int h = he_index(ct, best_side);
    if (is_slit_he(s, slit_he, h)) {
      RayHit r;
      r.hit_slit = true;
      r.slit_point = dir * best_u;
      return r;
    }
    int g = s.glue[h];
    int nt = g / 3, ns = g % 3;
    shift = P[(best_side + 1) % 3] - s.tris[nt].ref(ns);
    ct = nt;
    entry = ns;
    t_lo = best_u;
  }
  throw WalkError("ray walk budget exceeded");
}

}  // namespace slitsurf
