#include "slitsurf/enumerate.hpp"

#include <algorithm>
#include <map>
#include <thread>

#include "slitsurf/walk.hpp"

namespace slitsurf {

namespace {

Int isqrt_floor(const Int& n) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

// exact rational upper bound for (sqrt(a)+sqrt(b))^2
Rat sum_sqrt_sq_upper(const Rat& a, const Rat& b) {
  Rat prod = a * b;
  Int num_ceil = prod.get_num() / prod.get_den() + 1;
  Int root = isqrt_floor(num_ceil) + 1;
  return a + b + Rat(2) * Rat(root);
}

long depth_cap_for(const Surface& s, const Rat& bound_sq) {
  Rat w2min(-1);
  for (const auto& t : s.tris) {
    Rat a2 = t.doubled_area();
    a2 = a2 * a2;
    Rat maxe(0);
    for (const auto& e : t.e) {
      Rat ne = norm_sq(e);
      if (ne > maxe) maxe = ne;
    }
    Rat w2 = a2 / maxe;
    if (w2min < 0 || w2 < w2min) w2min = w2;
  }
  Rat q = bound_sq / w2min;
  Int qe = q.get_num() / q.get_den() + 1;
  Int r = isqrt_floor(qe) + 2;
  long rl = r.fits_slong_p() ? r.get_si() : 1000000000L;
  return 1024 + s.num_tris() + 64 * rl;
}

bool halfedge_is_slit(const std::optional<std::array<int, 2>>& slit, int h) {
  return slit && ((*slit)[0] == h || (*slit)[1] == h);
}

// distance prune: squared distance from the origin to the part of [p,q]
// visible inside the cone
Rat visible_dist_sq(const Cone& c, const Vec2& p, const Vec2& q) {
  Vec2 d = q - p;
  Rat tlo(0), thi(1);
  {
    Rat den = cross(c.lo, d);
    if (sgn(den) != 0) {
      Rat t = -cross(c.lo, p) / den;
      if (sgn(cross(c.lo, p)) < 0) {
        if (t > tlo) tlo = t;
      } else if (sgn(cross(c.lo, q)) < 0) {
        if (t < thi) thi = t;
      }
    }
  }
  {
    Rat den = cross(c.hi, d);
    if (sgn(den) != 0) {
      Rat t = -cross(c.hi, p) / den;
      if (sgn(cross(p, c.hi)) < 0) {
        if (t > tlo) tlo = t;
      } else if (sgn(cross(q, c.hi)) < 0) {
        if (t < thi) thi = t;
      }
    }
  }
  if (tlo > thi) return dist_sq_origin_segment(p, q);  // defensive: full segment
  return dist_sq_origin_segment(p + d * tlo, p + d * thi);
}

struct WedgeJob {
  const Surface& s;
  std::optional<std::array<int, 2>> slit;
  Rat bound;
  long cap;
  std::vector<SaddleConn> out;

  struct Node {
    int tri;
    Vec2 shift;
    int entry;
    Cone cone;
    long depth;
  };

  void push(std::vector<Node>& stack, int tri, const Vec2& shift, int side, const Cone& cone,
            long depth) {
    int h = he_index(tri, side);
    if (halfedge_is_slit(slit, h)) return;
    Vec2 U = s.tris[tri].ref(side) + shift;
    Vec2 V = s.tris[tri].ref((side + 1) % 3) + shift;
    Vec2 w1 = U, w2 = V;
    int cw = sgn(cross(w1, w2));
    if (cw == 0) return;  // portal collinear with the origin: blocked by its endpoints
    if (cw < 0) std::swap(w1, w2);
    auto clipped = cone_clip(cone, w1, w2);
    if (!clipped) return;
    if (visible_dist_sq(*clipped, U, V) > bound) return;
    int g = s.glue[h];
    int nt = g / 3, ns = g % 3;
    Vec2 nshift = V - s.tris[nt].ref(ns);
    stack.push_back({nt, nshift, ns, *clipped, depth + 1});
  }

  void run_corner(const Corner& c) {
    Vec2 a = s.tris[c.tri].e[c.k];
    Vec2 b = -s.tris[c.tri].e[(c.k + 2) % 3];
    Cone cone{a, b};
    Vec2 shift = -s.tris[c.tri].ref(c.k);
    std::vector<Node> stack;
    push(stack, c.tri, shift, (c.k + 1) % 3, cone, 0);
    while (!stack.empty()) {
      Node n = std::move(stack.back());
      stack.pop_back();
      if (n.depth > cap) throw EnumError("wedge recursion depth cap exceeded");
      int apexslot = (n.entry + 2) % 3;
      Vec2 apex = s.tris[n.tri].ref(apexslot) + n.shift;
      if (n.cone.contains(apex) && norm_sq(apex) <= bound && upper_canonical(apex))
        out.push_back({c, {n.tri, apexslot}, apex});
      push(stack, n.tri, n.shift, (n.entry + 1) % 3, n.cone, n.depth);
      push(stack, n.tri, n.shift, (n.entry + 2) % 3, n.cone, n.depth);
    }
  }
};

bool sc_order(const SaddleConn& x, const SaddleConn& y) {
  Rat nx = norm_sq(x.hol), ny = norm_sq(y.hol);
  int c = cmp(nx, ny);
  if (c != 0) return c < 0;
  int dcmp = compare_direction(x.hol, y.hol);
  if (dcmp != 0) return dcmp < 0;
  if (x.start.tri != y.start.tri) return x.start.tri < y.start.tri;
  if (x.start.k != y.start.k) return x.start.k < y.start.k;
  if (x.end.tri != y.end.tri) return x.end.tri < y.end.tri;
  return x.end.k < y.end.k;
}

EnumResult enumerate_impl(const Surface& s, std::optional<int> slit_edge, const Rat& bound_sq,
                          int threads) {
  if (sgn(bound_sq) <= 0) throw EnumError("nonpositive length bound");
  std::optional<std::array<int, 2>> slit;
  if (slit_edge) {
    auto edges = edge_list(s);
    slit = std::array<int, 2>{edges[*slit_edge].h1, edges[*slit_edge].h2};
  }
  long cap = depth_cap_for(s, bound_sq);
  int ncorner = 3 * s.num_tris();
  int nthreads = std::max(1, std::min(threads, ncorner));
  std::vector<std::vector<SaddleConn>> results(ncorner);
  std::vector<std::string> errors(nthreads);
  auto work = [&](int w) {
    try {
      WedgeJob job{s, slit, bound_sq, cap, {}};
      for (int ci = w; ci < ncorner; ci += nthreads) {
        job.out.clear();
        job.run_corner({ci / 3, ci % 3});
        results[ci] = job.out;
      }
    } catch (const std::exception& e) {
      errors[w] = e.what();
    }
  };
  if (nthreads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < nthreads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (!e.empty()) throw EnumError(e);

  EnumResult r;
  r.bound_sq = bound_sq;
  r.slit_edge = slit_edge;
  for (auto& v : results)
    for (auto& sc : v) r.conns.push_back(sc);
  // edges are saddle connections too (the slit pair excluded)
  auto edges = edge_list(s);
  for (int eid = 0; eid < static_cast<int>(edges.size()); ++eid) {
    if (slit_edge && eid == *slit_edge) continue;
    SaddleConn sc = edge_saddle(s, eid);
    if (norm_sq(sc.hol) <= bound_sq) r.conns.push_back(sc);
  }
  std::sort(r.conns.begin(), r.conns.end(), sc_order);
  return r;
}

}  // namespace

EnumResult enumerate_sc(const Surface& s, const Rat& bound_sq, int threads) {
  return enumerate_impl(s, std::nullopt, bound_sq, threads);
}

EnumResult enumerate_sc(const SlitSurface& s, const Rat& bound_sq, int threads) {
  return enumerate_impl(s.s, s.slit_edge, bound_sq, threads);
}

std::vector<SaddleConn> size_bucket(const EnumResult& r, long j) {
  std::vector<SaddleConn> out;
  for (const auto& sc : r.conns)
    if (size_of(sc.hol) == j) out.push_back(sc);
  return out;
}

std::vector<SaddleConn> dedupe_paper_convention(const EnumResult& r, const Involution& tau) {
  (void)tau;  // involution orbits are antiparallel, so direction classes subsume them
  std::map<std::pair<std::string, std::string>, SaddleConn> reps;
  for (const auto& sc : r.conns) {
    Int dx = sc.hol.x.get_num() * sc.hol.y.get_den();
    Int dy = sc.hol.y.get_num() * sc.hol.x.get_den();
    Int g;
    mpz_gcd(g.get_mpz_t(), dx.get_mpz_t(), dy.get_mpz_t());
    if (sgn(g) != 0) {
      dx /= g;
      dy /= g;
    }
    auto key = std::make_pair(dx.get_str(), dy.get_str());
    if (!reps.count(key)) reps.emplace(key, sc);
  }
  std::vector<SaddleConn> out;
  for (auto& [k, v] : reps) out.push_back(v);
  std::sort(out.begin(), out.end(), sc_order);
  return out;
}

namespace {

// nullopt when a or b is not interiorly disjoint from the inserted pair
std::optional<bool> separates_impl(const Surface& s, const Involution& tau,
                                   const SaddleConn& sigma, const SaddleConn& a,
                                   const SaddleConn& b) {
  Surface S = s;
  Involution T = tau;
  SaddleConn aa = a, bb = b;
  Tracked tracked;
  tracked.scs = {&aa, &bb};
  PairInsert pi = insert_edge_pair_equivariant(S, T, sigma, tracked);
  std::array<int, 4> cut = {pi.sigma_he, S.glue[pi.sigma_he], pi.tau_sigma_he,
                            S.glue[pi.tau_sigma_he]};
  for (const SaddleConn* sc : {&aa, &bb}) {
    auto dev = develop_segment(S, sc->start, sc->hol);
    if (!dev) return std::nullopt;
    for (int h : dev->crossed)
      if (std::find(cut.begin(), cut.end(), h) != cut.end()) return std::nullopt;
  }
  std::vector<int> comp(S.num_tris(), -1);
  std::vector<int> stack;
  int next = 0;
  for (int t0 = 0; t0 < S.num_tris(); ++t0) {
    if (comp[t0] >= 0) continue;
    comp[t0] = next;
    stack.push_back(t0);
    while (!stack.empty()) {
      int t = stack.back();
      stack.pop_back();
      for (int k = 0; k < 3; ++k) {
        int h = he_index(t, k);
        if (std::find(cut.begin(), cut.end(), h) != cut.end()) continue;
        int u = S.glue[h] / 3;
        if (comp[u] < 0) {
          comp[u] = next;
          stack.push_back(u);
        }
      }
    }
    ++next;
  }
  return comp[aa.start.tri] != comp[bb.start.tri];
}

}  // namespace

bool is_C_separated(const Surface& s, const Involution& tau, const SaddleConn& alpha,
                    const SaddleConn& beta, const Rat& C, const EnumResult& search) {
  if (sgn(C) <= 0) throw EnumError("C must be positive");
  Rat rho_bound = norm_sq(beta.hol) / (C * C);
  if (search.bound_sq < rho_bound) throw EnumError("insufficient search bound");
  for (const auto& rho : search.conns) {
    if (!(norm_sq(rho.hol) < rho_bound)) continue;
    if (is_invariant(tau, rho)) continue;
    auto sep = separates_impl(s, tau, rho, alpha, beta);
    if (sep && *sep) return true;
  }
  return false;
}

namespace {

// ----- triangles with the slit as a side: double-cone corridor search -----

struct TriFrame {
  int tri;
  Vec2 shift;
  int entry;
  Cone coneA, coneB;
  int next_child;
};

struct TriSearch {
  const Surface& s;
  std::array<int, 2> slit;
  Vec2 B;  // slit holonomy in the local frame (A at the origin)
  Rat side_bound;
  long cap;

  std::vector<TriFrame> stack;

  std::pair<Vec2, Vec2> chord(const TriFrame& f) const {
    return {s.tris[f.tri].ref(f.entry) + f.shift,
            s.tris[f.tri].ref((f.entry + 1) % 3) + f.shift};
  }

  bool clip_at(const Vec2& anchor, const Cone& c, const Vec2& U, const Vec2& V, const Vec2& beyond,
               Cone& out) const {
    if (U == anchor || V == anchor) {
      Vec2 edir = V - U;
      int side = sgn(cross(edir, beyond - U));
      if (side == 0) return false;
      auto r = cone_clip_halfplane(c, edir, side);
      if (!r) return false;
      out = *r;
      return true;
    }
    Vec2 w1 = U - anchor, w2 = V - anchor;
    int cw = sgn(cross(w1, w2));
    if (cw == 0) return false;
    if (cw < 0) std::swap(w1, w2);
    auto r = cone_clip(c, w1, w2);
    if (!r) return false;
    out = *r;
    return true;
  }

  Vec2 side_cross(const Vec2& anchor, const Vec2& x, const Vec2& U, const Vec2& V) const {
    if (U == anchor || V == anchor) return anchor;
    Vec2 d = V - U;
    Rat den = cross(x - anchor, d);
    if (sgn(den) == 0) throw EnumError("degenerate chord crossing");
    Rat t = cross(U - anchor, d) / den;
    return anchor + (x - anchor) * t;
  }

  static void poly_signs(const std::vector<Vec2>& poly, const Vec2& p0, const Vec2& dir, int& neg,
                         int& pos) {
    neg = pos = 0;
    for (const auto& v : poly) {
      int sg = sgn(cross(dir, v - p0));
      if (sg < 0) ++neg;
      if (sg > 0) ++pos;
    }
  }

  static bool convex_interiors_overlap(const std::vector<Vec2>& P, const std::vector<Vec2>& Q) {
    auto separated_by = [&](const std::vector<Vec2>& E) {
      for (size_t i = 0; i < E.size(); ++i) {
        Vec2 p0 = E[i];
        Vec2 dir = E[(i + 1) % E.size()] - E[i];
        if (dir.is_zero()) continue;
        int negP, posP, negQ, posQ;
        poly_signs(P, p0, dir, negP, posP);
        poly_signs(Q, p0, dir, negQ, posQ);
        if ((negP == 0 && posQ == 0) || (posP == 0 && negQ == 0)) return true;
      }
      return false;
    };
    if (separated_by(P) || separated_by(Q)) return false;
    return true;
  }

  // Exact embeddedness: the slabs of T(x) between consecutive corridor
  // chords tile T(x) in the plane; pulled back to each surface triangle's
  // frame, slabs from lifts with different translations must stay disjoint.
  bool verify_embedded(const Vec2& x) const {
    std::map<int, std::vector<int>> by_tri;
    bool any_repeat = false;
    for (size_t i = 0; i < stack.size(); ++i) {
      auto& v = by_tri[stack[i].tri];
      if (!v.empty() && !(stack[v.front()].shift == stack[i].shift)) any_repeat = true;
      v.push_back(static_cast<int>(i));
    }
    if (!any_repeat) return true;
    size_t k = stack.size();
    std::vector<Vec2> atA(k), atB(k);
    for (size_t i = 0; i < k; ++i) {
      auto [U, V] = chord(stack[i]);
      atA[i] = side_cross(Vec2(0, 0), x, U, V);
      atB[i] = side_cross(B, x, U, V);
    }
    std::vector<std::vector<Vec2>> slab(k);
    for (size_t i = 0; i < k; ++i) {
      if (i + 1 < k)
        slab[i] = {atA[i], atB[i], atB[i + 1], atA[i + 1]};
      else
        slab[i] = {atA[i], atB[i], x};
    }
    for (auto& [tid, frames] : by_tri) {
      if (frames.size() < 2) continue;
      for (size_t a = 0; a < frames.size(); ++a)
        for (size_t b = a + 1; b < frames.size(); ++b) {
          int ia = frames[a], ib = frames[b];
          if (stack[ia].shift == stack[ib].shift) continue;
          std::vector<Vec2> Pa, Pb;
          for (const auto& v : slab[ia]) Pa.push_back(v - stack[ia].shift);
          for (const auto& v : slab[ib]) Pb.push_back(v - stack[ib].shift);
          if (convex_interiors_overlap(Pa, Pb)) return false;
        }
    }
    return true;
  }

  std::optional<TriFrame> child_frame(const TriFrame& f, int which) const {
    int side = (f.entry + 1 + which) % 3;
    int h = he_index(f.tri, side);
    if (h == slit[0] || h == slit[1]) return std::nullopt;
    Vec2 U = s.tris[f.tri].ref(side) + f.shift;
    Vec2 V = s.tris[f.tri].ref((side + 1) % 3) + f.shift;
    int g = s.glue[h];
    int nt = g / 3, ns = g % 3;
    Vec2 nshift = V - s.tris[nt].ref(ns);
    Vec2 beyond = s.tris[nt].ref((ns + 2) % 3) + nshift;
    Cone ca, cb;
    if (!clip_at(Vec2(0, 0), f.coneA, U, V, beyond, ca)) return std::nullopt;
    if (!clip_at(B, f.coneB, U, V, beyond, cb)) return std::nullopt;
    if (visible_dist_sq(ca, U, V) > side_bound) return std::nullopt;
    if (visible_dist_sq(cb, U - B, V - B) > side_bound) return std::nullopt;
    return TriFrame{nt, nshift, ns, ca, cb, 0};
  }

  bool apex_admissible(const TriFrame& f, Vec2& apex_out) const {
    int apexslot = (f.entry + 2) % 3;
    Vec2 x = s.tris[f.tri].ref(apexslot) + f.shift;
    if (norm_sq(x) > side_bound) return false;
    if (norm_sq(x - B) > side_bound) return false;
    if (!f.coneA.contains(x)) return false;
    if (!f.coneB.contains(x - B)) return false;
    apex_out = x;
    return true;
  }
};

struct LocalTriangle {
  SaddleConn rho, sigma;
  Vec2 apex;
};

std::vector<LocalTriangle> triangles_from_halfedge(const Surface& surf,
                                                   const std::array<int, 2>& slit_hes, int h,
                                                   const Rat& side_bound) {
  TriSearch ts{surf, slit_hes, surf.evec(h), side_bound, depth_cap_for(surf, side_bound), {}};
  int t0 = h / 3, s0 = h % 3;
  Corner cornerA{t0, s0};
  Corner cornerB{t0, (s0 + 1) % 3};
  Vec2 Bv = ts.B;
  std::vector<LocalTriangle> found;
  ts.stack.push_back({t0, -surf.tris[t0].ref(s0), s0, Cone{Bv, -Bv}, Cone{Bv, -Bv}, 0});
  auto emit_if_apex = [&](const TriFrame& f) {
    Vec2 x;
    if (!ts.apex_admissible(f, x)) return;
    if (!ts.verify_embedded(x)) return;
    int apexslot = (f.entry + 2) % 3;
    Corner apexc{f.tri, apexslot};
    found.push_back({{cornerA, apexc, x}, {apexc, cornerB, Bv - x}, x});
  };
  emit_if_apex(ts.stack.back());
  while (!ts.stack.empty()) {
    TriFrame& f = ts.stack.back();
    if (static_cast<long>(ts.stack.size()) > ts.cap)
      throw EnumError("triangle corridor depth cap exceeded");
    if (f.next_child >= 2) {
      ts.stack.pop_back();
      continue;
    }
    int which = f.next_child++;
    auto child = ts.child_frame(f, which);
    if (!child) continue;
    ts.stack.push_back(*child);
    emit_if_apex(ts.stack.back());
  }
  return found;
}

}  // namespace

std::vector<SlitTriangle> triangles_over_slit(const SlitSurface& ss, const Rat& side_bound_sq,
                                              bool both_sides) {
  auto hes = ss.slit_halfedges();
  std::vector<SlitTriangle> out;
  auto above = triangles_from_halfedge(ss.s, hes, hes[0], side_bound_sq);
  for (auto& t : above) out.push_back({t.rho, t.sigma, t.apex, true});
  if (both_sides) {
    Vec2 Bv = ss.s.evec(hes[0]);
    auto below = triangles_from_halfedge(ss.s, hes, hes[1], side_bound_sq);
    for (auto& t : below) {
      // the bottom frame's origin is the surface point B; translate back
      SlitTriangle st;
      st.above = false;
      st.apex = t.apex + Bv;
      st.rho = t.sigma.reversed();  // from A to the apex
      st.sigma = t.rho.reversed();  // from the apex to B
      out.push_back(st);
    }
  }
  return out;
}

std::optional<SlitTriangle> triangle_over_slit_embedded(const SlitSurface& ss, const Vec2& apex,
                                                        bool above) {
  auto hes = ss.slit_halfedges();
  int h = above ? hes[0] : hes[1];
  Vec2 Bv_top = ss.s.evec(hes[0]);
  Vec2 x = above ? apex : apex - Bv_top;  // local frame of the chosen half-edge
  const Surface& surf = ss.s;
  Rat side_bound = norm_sq(x);
  {
    Rat other = norm_sq(x - surf.evec(h));
    if (other > side_bound) side_bound = other;
  }
  TriSearch ts{surf, hes, surf.evec(h), side_bound, depth_cap_for(surf, side_bound), {}};
  int t0 = h / 3, s0 = h % 3;
  Vec2 Bv = ts.B;
  ts.stack.push_back({t0, -surf.tris[t0].ref(s0), s0, Cone{Bv, -Bv}, Cone{Bv, -Bv}, 0});
  long guard = 0;
  while (true) {
    if (++guard > ts.cap + 4) throw EnumError("directed triangle walk budget exceeded");
    const TriFrame f = ts.stack.back();
    int apexslot = (f.entry + 2) % 3;
    Vec2 pos = surf.tris[f.tri].ref(apexslot) + f.shift;
    if (pos == x) {
      Vec2 got;
      if (!ts.apex_admissible(f, got)) return std::nullopt;
      if (!ts.verify_embedded(x)) return std::nullopt;
      Corner apexc{f.tri, apexslot};
      SaddleConn rho{{t0, s0}, apexc, x};
      SaddleConn sigma{apexc, {t0, (s0 + 1) % 3}, Bv - x};
      SlitTriangle st;
      if (above) {
        st = {rho, sigma, x, true};
      } else {
        st.above = false;
        st.apex = x + Bv_top;
        st.rho = sigma.reversed();
        st.sigma = rho.reversed();
      }
      return st;
    }
    bool descended = false;
    for (int which = 0; which < 2 && !descended; ++which) {
      auto child = ts.child_frame(f, which);
      if (!child) continue;
      if (child->coneA.contains(x) && child->coneB.contains(x - Bv)) {
        ts.stack.push_back(*child);
        descended = true;
      }
    }
    if (!descended) return std::nullopt;
  }
}

std::vector<SaddleConn> triangles_with_side(const SlitSurface& ss, const Involution& tau, long j) {
  // size j: 2^j <= |g| < 2^{j+1}, so |g|^2 < 2^{2j+2}
  Rat side_bound(1);
  long e = 2 * j + 2;
  if (e >= 0)
    mpz_mul_2exp(side_bound.get_num_mpz_t(), side_bound.get_num_mpz_t(), e);
  else
    mpz_mul_2exp(side_bound.get_den_mpz_t(), side_bound.get_den_mpz_t(), -e);
  side_bound.canonicalize();

  auto tris = triangles_over_slit(ss, side_bound, true);
  std::vector<SaddleConn> out;
  for (const auto& t : tris) {
    for (const SaddleConn* side : {&t.rho, &t.sigma}) {
      if (size_of(side->hol) != j) continue;
      if (is_invariant(tau, *side)) continue;
      out.push_back(canonical(*side));
    }
  }
  std::sort(out.begin(), out.end(), sc_order);
  out.erase(std::unique(out.begin(), out.end(),
                        [](const SaddleConn& a, const SaddleConn& b) { return a.same_oriented(b); }),
            out.end());
  return out;
}

std::vector<CylinderCert> simple_cylinders_containing(const SlitSurface& ss, const Involution& tau,
                                                      const Rat& bound_sq) {
  if (sgn(bound_sq) <= 0) return {};
  Vec2 beta = ss.slit_hol();
  Rat beta_sq = norm_sq(beta);
  {
    SaddleConn bsc = edge_saddle(ss.s, ss.slit_edge);
    if (!is_invariant(tau, bsc)) throw EnumError("slit is not invariant under the involution");
  }
  Rat side_bound = sum_sqrt_sq_upper(bound_sq, beta_sq);
  auto tris = triangles_over_slit(ss, side_bound, false);  // one triangle per cylinder
  std::vector<CylinderCert> out;
  for (const auto& t : tris) {
    bool rho_inv = is_invariant(tau, t.rho);
    bool sigma_inv = is_invariant(tau, t.sigma);
    if (rho_inv && sigma_inv) throw EnumError("triangle over slit with two invariant sides");
    if (!rho_inv && !sigma_inv) continue;
    const SaddleConn& boundary = rho_inv ? t.sigma : t.rho;
    const SaddleConn& crossing = rho_inv ? t.rho : t.sigma;
    Rat circ = norm_sq(boundary.hol);
    if (circ > bound_sq) continue;
    CylinderCert c;
    c.boundary = canonical(boundary);
    c.crossing = canonical(crossing);
    c.apex = t.apex;
    c.circumference_sq = circ;
    c.area = abs(cross(boundary.hol, beta));
    out.push_back(c);
  }
  std::sort(out.begin(), out.end(), [](const CylinderCert& a, const CylinderCert& b) {
    int c = cmp(a.circumference_sq, b.circumference_sq);
    if (c != 0) return c < 0;
    return sc_order(a.boundary, b.boundary);
  });
  return out;
}

}  // namespace slitsurf
