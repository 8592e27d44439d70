#include "slitsurf/involution.hpp"

#include <algorithm>
#include <numeric>

#include "slitsurf/walk.hpp"

namespace slitsurf {

Diagnostics validate_involution(const Surface& s, const Involution& tau) {
  int T = s.num_tris();
  if (static_cast<int>(tau.tri_map.size()) != T || static_cast<int>(tau.edge_map.size()) != 3 * T)
    return Diagnostics::bad("involution table size mismatch");
  for (int t = 0; t < T; ++t) {
    if (tau.tri_map[t] == t) return Diagnostics::bad("involution fixes triangle " + std::to_string(t));
    if (tau.tri_map[tau.tri_map[t]] != t) return Diagnostics::bad("triangle map not order 2");
  }
  for (int h = 0; h < 3 * T; ++h) {
    int ih = tau.edge_map[h];
    if (ih / 3 != tau.tri_map[h / 3]) return Diagnostics::bad("edge map inconsistent with triangle map");
    if (tau.edge_map[ih] != h) return Diagnostics::bad("edge map not order 2");
    if (s.evec(ih) != -s.evec(h)) return Diagnostics::bad("edge map does not negate holonomy");
    if (tau.edge_map[s.glue[h]] != s.glue[ih]) return Diagnostics::bad("edge map does not commute with gluing");
  }
  return Diagnostics::good();
}

std::vector<Involution> find_involutions(const Surface& s) {
  int T = s.num_tris();
  std::vector<Involution> found;
  for (int t0_img = 0; t0_img < T; ++t0_img) {
    if (t0_img == 0) continue;
    for (int rot0 = 0; rot0 < 3; ++rot0) {
      // candidate: corner (0,k) -> (t0_img, (k+rot0)%3), vectors negated
      bool ok = true;
      for (int k = 0; k < 3 && ok; ++k)
        if (s.tris[t0_img].e[(k + rot0) % 3] != -s.tris[0].e[k]) ok = false;
      if (!ok) continue;
      std::vector<int> img(T, -1), rot(T, -1);
      img[0] = t0_img;
      rot[0] = rot0;
      std::vector<int> stack{0};
      while (!stack.empty() && ok) {
        int t = stack.back();
        stack.pop_back();
        for (int sdx = 0; sdx < 3; ++sdx) {
          int gh = s.glue[he_index(t, sdx)];
          int u = gh / 3, a = gh % 3;
          int igh = s.glue[he_index(img[t], (sdx + rot[t]) % 3)];
          int uimg = igh / 3, aimg = igh % 3;
          int urot = ((aimg - a) % 3 + 3) % 3;
          if (img[u] < 0) {
            img[u] = uimg;
            rot[u] = urot;
            bool vec_ok = true;
            for (int k = 0; k < 3; ++k)
              if (s.tris[uimg].e[(k + urot) % 3] != -s.tris[u].e[k]) vec_ok = false;
            if (!vec_ok) {
              ok = false;
              break;
            }
            stack.push_back(u);
          } else if (img[u] != uimg || rot[u] != urot) {
            ok = false;
            break;
          }
        }
      }
      if (!ok) continue;
      for (int t = 0; t < T && ok; ++t) {
        if (img[t] < 0 || img[t] == t) ok = false;
        else if (img[img[t]] != t || ((rot[t] + rot[img[t]]) % 3) != 0) ok = false;
      }
      if (!ok) continue;
      Involution tau;
      tau.tri_map = img;
      tau.edge_map.assign(3 * T, -1);
      for (int t = 0; t < T; ++t)
        for (int k = 0; k < 3; ++k) tau.edge_map[he_index(t, k)] = he_index(img[t], (k + rot[t]) % 3);
      if (!validate_involution(s, tau).ok) continue;
      bool dup = false;
      for (const auto& f : found)
        if (f.edge_map == tau.edge_map) dup = true;
      if (!dup) found.push_back(std::move(tau));
    }
  }
  return found;
}

std::optional<Involution> find_involution(const Surface& s, std::optional<int> prefer_slit_edge) {
  auto all = find_involutions(s);
  if (all.empty()) return std::nullopt;
  std::vector<const Involution*> pool;
  if (prefer_slit_edge) {
    for (const auto& tau : all)
      if (tau_edge(s, tau, *prefer_slit_edge) == *prefer_slit_edge) pool.push_back(&tau);
  }
  if (pool.empty())
    for (const auto& tau : all) pool.push_back(&tau);
  const Involution* best = pool[0];
  for (const Involution* cand : pool) {
    if (cand->tri_map[0] != best->tri_map[0]
            ? cand->tri_map[0] < best->tri_map[0]
            : cand->edge_map < best->edge_map)
      best = cand;
  }
  return *best;
}

SaddleConn tau_image(const Involution& tau, const SaddleConn& sc) {
  return {tau.map_corner(sc.start), tau.map_corner(sc.end), -sc.hol};
}

bool is_invariant(const Involution& tau, const SaddleConn& sc) {
  return canonical(tau_image(tau, sc)).same_oriented(canonical(sc));
}

int tau_edge(const Surface& s, const Involution& tau, int edge_id) {
  auto edges = edge_list(s);
  return edge_id_of_halfedge(s, tau.edge_map[edges[edge_id].h1]);
}

SaddleConn edge_saddle(const Surface& s, int edge_id) {
  auto edges = edge_list(s);
  int h = edges[edge_id].h1;
  int t = h / 3, k = h % 3;
  SaddleConn sc{{t, k}, {t, (k + 1) % 3}, s.evec(h)};
  return canonical(sc);
}

namespace {

struct UF {
  std::vector<int> p;
  explicit UF(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int a) {
    while (p[a] != a) a = p[a] = p[p[a]];
    return a;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

std::vector<int> cut_components(const Surface& s, int h1, int g1) {
  int h2 = s.glue[h1], g2 = s.glue[g1];
  UF uf(s.num_tris());
  for (int h = 0; h < 3 * s.num_tris(); ++h) {
    if (h == h1 || h == h2 || h == g1 || h == g2) continue;
    uf.unite(h / 3, s.glue[h] / 3);
  }
  std::vector<int> comp(s.num_tris());
  for (int t = 0; t < s.num_tris(); ++t) comp[t] = uf.find(t);
  return comp;
}

}  // namespace

CutResult cut_and_glue(const Surface& s, const Involution& tau, const SaddleConn& sigma,
                       std::optional<int> marker_edge) {
  if (is_invariant(tau, sigma)) throw InvolutionError("cut_and_glue on invariant saddle connection");
  CutResult cr;
  cr.prepared = s;
  cr.prepared_tau = tau;
  int marker_he = -1;
  Tracked tracked;
  if (marker_edge) {
    marker_he = edge_list(s)[*marker_edge].h1;
    tracked.halfedges.push_back(&marker_he);
  }
  PairInsert pi =
      insert_edge_pair_equivariant(cr.prepared, cr.prepared_tau, sigma, tracked);
  Surface& S = cr.prepared;
  Involution& T = cr.prepared_tau;
  int h1 = pi.sigma_he, h2 = S.glue[pi.sigma_he];
  int g1 = pi.tau_sigma_he, g2 = S.glue[pi.tau_sigma_he];
  {
    int im = T.edge_map[h1];
    if (im != g1 && im != g2) throw InvolutionError("inserted pair is not an involution orbit");
  }
  cr.sigma_edge = edge_id_of_halfedge(S, h1);
  cr.tau_sigma_edge = edge_id_of_halfedge(S, g1);
  if (cr.sigma_edge == cr.tau_sigma_edge)
    throw InvolutionError("sigma became invariant during insertion");

  std::vector<int> comp = cut_components(S, h1, g1);
  {
    std::vector<int> reps;
    for (int t = 0; t < S.num_tris(); ++t)
      if (std::find(reps.begin(), reps.end(), comp[t]) == reps.end()) reps.push_back(comp[t]);
    if (reps.size() != 2)
      throw InvolutionError("cut along sigma and tau(sigma) does not give two components");
  }
  for (int t = 0; t < S.num_tris(); ++t)
    if (comp[T.tri_map[t]] != comp[t])
      throw InvolutionError("involution exchanges the cut components");

  // pair each sigma side with the tau(sigma) side in its component
  int mate_of_h1, mate_of_h2;
  if (comp[g1 / 3] == comp[h1 / 3]) {
    mate_of_h1 = g1;
    mate_of_h2 = g2;
  } else {
    mate_of_h1 = g2;
    mate_of_h2 = g1;
  }
  if (comp[mate_of_h1 / 3] != comp[h1 / 3] || comp[mate_of_h2 / 3] != comp[h2 / 3])
    throw InvolutionError("cut sides distributed inconsistently");
  if (S.evec(mate_of_h1) != -S.evec(h1) || S.evec(mate_of_h2) != -S.evec(h2))
    throw InvolutionError("cut regluing would not be a translation");

  int comp_first;
  if (marker_edge)
    comp_first = comp[marker_he / 3];
  else
    comp_first = comp[0];

  int piece_idx = 0;
  cr.marker_edge_piece0 = -1;
  for (int which = 0; which < 2; ++which) {
    int c = which == 0 ? comp_first : -1;
    if (which == 1) {
      for (int t = 0; t < S.num_tris(); ++t)
        if (comp[t] != comp_first) {
          c = comp[t];
          break;
        }
    }
    CutPiece& piece = cr.piece[piece_idx];
    std::vector<int> new_index(S.num_tris(), -1);
    for (int t = 0; t < S.num_tris(); ++t)
      if (comp[t] == c) {
        new_index[t] = static_cast<int>(piece.tri_from.size());
        piece.tri_from.push_back(t);
      }
    Surface& P = piece.surface;
    P.tris.reserve(piece.tri_from.size());
    for (int t : piece.tri_from) P.tris.push_back(S.tris[t]);
    P.glue.assign(3 * P.num_tris(), -1);
    auto remap_he = [&](int h) { return he_index(new_index[h / 3], h % 3); };
    for (int t : piece.tri_from)
      for (int k = 0; k < 3; ++k) {
        int h = he_index(t, k);
        int partner;
        if (h == h1) partner = mate_of_h1;
        else if (h == mate_of_h1) partner = h1;
        else if (h == h2) partner = mate_of_h2;
        else if (h == mate_of_h2) partner = h2;
        else partner = S.glue[h];
        P.glue[remap_he(h)] = remap_he(partner);
      }
    P.rebuild_vertices();
    Diagnostics d = validate(P);
    if (!d.ok) throw InvolutionError("cut piece invalid: " + d.message);
    piece.tau.tri_map.assign(P.num_tris(), -1);
    piece.tau.edge_map.assign(3 * P.num_tris(), -1);
    for (int t : piece.tri_from) {
      piece.tau.tri_map[new_index[t]] = new_index[T.tri_map[t]];
      for (int k = 0; k < 3; ++k)
        piece.tau.edge_map[remap_he(he_index(t, k))] = remap_he(T.edge_map[he_index(t, k)]);
    }
    Diagnostics dt = validate_involution(P, piece.tau);
    if (!dt.ok) throw InvolutionError("induced involution invalid: " + dt.message);
    int inner = comp[h1 / 3] == c ? h1 : h2;
    piece.new_slit_edge = edge_id_of_halfedge(P, remap_he(inner));
    piece.contains_marker = marker_edge && comp[marker_he / 3] == c;
    if (piece.contains_marker) cr.marker_edge_piece0 = edge_id_of_halfedge(P, remap_he(marker_he));
    ++piece_idx;
  }
  return cr;
}

int marker_edge_in_piece(const CutResult& cr) {
  if (cr.marker_edge_piece0 < 0) throw InvolutionError("no marker edge was tracked");
  return cr.marker_edge_piece0;
}

bool separates(const Surface& s, const Involution& tau, const SaddleConn& sigma,
               const SaddleConn& a, const SaddleConn& b) {
  if (is_invariant(tau, sigma)) throw InvolutionError("separates: sigma must be non-invariant");
  Surface S = s;
  Involution T = tau;
  SaddleConn aa = a, bb = b;
  Tracked tracked;
  tracked.scs = {&aa, &bb};
  PairInsert pi = insert_edge_pair_equivariant(S, T, sigma, tracked);
  std::vector<int> comp = cut_components(S, pi.sigma_he, pi.tau_sigma_he);
  return comp[aa.start.tri] != comp[bb.start.tri];
}

}  // namespace slitsurf
