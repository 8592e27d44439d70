#include "slitsurf/surface.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace slitsurf {

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int a) {
    while (p[a] != a) a = p[a] = p[p[a]];
    return a;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

void Surface::rebuild_vertices() {
  int n = 3 * num_tris();
  UnionFind uf(n);
  // corner at vertex k of tri t = half-edge index 3t+k; identify across glue:
  // half-edge (t,s) runs V_s -> V_{s+1}; partner (t',s') runs V'_{s'} -> V'_{s'+1}
  // with V_s == V'_{s'+1} and V_{s+1} == V'_{s'}.
  for (int h = 0; h < n; ++h) {
    int g = glue[h];
    if (g < 0) continue;
    int t = h / 3, s = h % 3;
    int tp = g / 3, sp = g % 3;
    uf.unite(he_index(t, s), he_index(tp, (sp + 1) % 3));
    uf.unite(he_index(t, (s + 1) % 3), he_index(tp, sp));
  }
  vclass.assign(n, -1);
  num_vertices = 0;
  for (int h = 0; h < n; ++h) {
    int r = uf.find(h);
    if (vclass[r] < 0) vclass[r] = num_vertices++;
    vclass[h] = vclass[r];
  }
}

Diagnostics validate(const Surface& s) {
  int T = s.num_tris();
  if (T == 0) return Diagnostics::bad("empty surface");
  for (int t = 0; t < T; ++t) {
    const Triangle& tr = s.tris[t];
    if (!(tr.e[0] + tr.e[1] + tr.e[2]).is_zero())
      return Diagnostics::bad("edge vectors do not close (triangle " + std::to_string(t) + ")");
    if (sgn(tr.doubled_area()) <= 0)
      return Diagnostics::bad("degenerate or misoriented triangle " + std::to_string(t));
  }
  if (static_cast<int>(s.glue.size()) != 3 * T) return Diagnostics::bad("gluing table size mismatch");
  for (int h = 0; h < 3 * T; ++h) {
    int g = s.glue[h];
    if (g < 0 || g >= 3 * T) return Diagnostics::bad("gluing out of range at half-edge " + std::to_string(h));
    if (g == h) return Diagnostics::bad("gluing not fixed-point-free at half-edge " + std::to_string(h));
    if (s.glue[g] != h) return Diagnostics::bad("gluing not involutive at half-edge " + std::to_string(h));
    if (s.evec(h) != -s.evec(g))
      return Diagnostics::bad("glued half-edges not opposite at half-edge " + std::to_string(h));
  }
  // connectivity of the gluing graph
  UnionFind uf(T);
  for (int h = 0; h < 3 * T; ++h) uf.unite(h / 3, s.glue[h] / 3);
  for (int t = 1; t < T; ++t)
    if (uf.find(t) != uf.find(0)) return Diagnostics::bad("surface not connected");
  // cone angles are positive multiples of 2*pi; computed in stratum()
  if (static_cast<int>(s.vclass.size()) != 3 * T) return Diagnostics::bad("vertex table size mismatch");
  return Diagnostics::good();
}

Rat area(const Surface& s) {
  Rat a = 0;
  for (const auto& t : s.tris) a += t.doubled_area();
  return a / 2;
}

namespace {

// Winding of the fan of corner sectors around one vertex class. Each corner
// contributes a ccw step of angle in (0, pi); crossings of the x-axis line
// count 2 per full turn, with a half-open classification so collinear
// directions are attributed consistently.
int vertex_winding(const Surface& s, const std::vector<Corner>& fan) {
  auto pos = [](const Vec2& v) {
    int sy = sgn(v.y);
    if (sy != 0) return sy > 0;
    return sgn(v.x) > 0;
  };
  int crossings = 0;
  for (const Corner& c : fan) {
    Vec2 a = s.tris[c.tri].e[c.k];
    Vec2 b = -s.tris[c.tri].e[(c.k + 2) % 3];
    if (pos(a) != pos(b)) ++crossings;
  }
  if (crossings % 2 != 0) throw SurfaceError("vertex winding parity violated");
  return crossings / 2;
}

}  // namespace

StratumSignature stratum(const Surface& s) {
  Diagnostics d = validate(s);
  if (!d.ok) throw SurfaceError("stratum of invalid surface: " + d.message);
  // collect corner fans per vertex class
  std::vector<std::vector<Corner>> fans(s.num_vertices);
  std::vector<bool> seen(3 * s.num_tris(), false);
  for (int h = 0; h < 3 * s.num_tris(); ++h) {
    if (seen[h]) continue;
    Corner c{h / 3, h % 3};
    std::vector<Corner> fan;
    Corner cur = c;
    do {
      seen[he_index(cur.tri, cur.k)] = true;
      fan.push_back(cur);
      cur = s.next_ccw(cur);
    } while (!(cur == c));
    fans[s.vclass[h]] = std::move(fan);
  }
  StratumSignature sig;
  for (const auto& fan : fans) {
    int w = vertex_winding(s, fan);
    if (w < 1) throw SurfaceError("vertex with cone angle below 2*pi");
    sig.kappa.push_back(w - 1);
  }
  std::sort(sig.kappa.begin(), sig.kappa.end());
  int total = std::accumulate(sig.kappa.begin(), sig.kappa.end(), 0);
  if (total % 2 != 0) throw SurfaceError("odd total zero order");
  sig.genus = total / 2 + 1;
  sig.dim_c = 2 * sig.genus + static_cast<int>(sig.kappa.size()) - 1;
  return sig;
}

std::vector<Edge> edge_list(const Surface& s) {
  std::vector<Edge> out;
  for (int h = 0; h < 3 * s.num_tris(); ++h) {
    int g = s.glue[h];
    if (h < g) out.push_back({h, g});
  }
  return out;
}

int edge_id_of_halfedge(const Surface& s, int he) {
  int g = s.glue[he];
  int lo = std::min(he, g);
  int id = 0;
  for (int h = 0; h < lo; ++h)
    if (h < s.glue[h]) ++id;
  return id;
}

std::array<int, 2> SlitSurface::slit_halfedges() const {
  auto edges = edge_list(s);
  if (slit_edge < 0 || slit_edge >= static_cast<int>(edges.size()))
    throw SurfaceError("slit edge id out of range");
  int h1 = edges[slit_edge].h1, h2 = edges[slit_edge].h2;
  // the designated ("top") side carries the canonical holonomy, so the
  // orientation of the slit survives reindexing surgeries
  if (upper_canonical(s.evec(h1))) return {h1, h2};
  return {h2, h1};
}

Vec2 SlitSurface::slit_hol() const { return s.evec(slit_halfedges()[0]); }

SlitSurface make_slit(const Surface& s, int edge_id) {
  SlitSurface ss{s, edge_id};
  ss.slit_halfedges();  // range check
  return ss;
}

Surface chain_surface(const std::vector<Vec2>& spine) {
  if (spine.size() < 2) throw SurfaceError("chain needs at least two spine vectors");
  int k = static_cast<int>(spine.size()) - 1;
  for (int i = 1; i <= k; ++i)
    if (sgn(cross(spine[i - 1], spine[i])) <= 0)
      throw SurfaceError("degenerate pair: spine vectors must be positively oriented");
  // Parallelogram P_i (1-based) has corners 0, v_{i-1}, v_{i-1}+v_i, v_i and
  // splits along the main diagonal into
  //   T_i^a = tri 2(i-1):   edges (v_{i-1}, v_i, -(v_{i-1}+v_i))
  //   T_i^b = tri 2(i-1)+1: edges (v_{i-1}+v_i, -v_{i-1}, -v_i)
  Surface s;
  for (int i = 1; i <= k; ++i) {
    const Vec2& u = spine[i - 1];
    const Vec2& w = spine[i];
    s.tris.push_back({{u, w, -(u + w)}});
    s.tris.push_back({{u + w, -u, -w}});
  }
  s.glue.assign(6 * k, -1);
  auto bind = [&](int a, int b) {
    s.glue[a] = b;
    s.glue[b] = a;
  };
  for (int i = 1; i <= k; ++i) {
    int ta = 2 * (i - 1), tb = ta + 1;
    bind(he_index(ta, 2), he_index(tb, 0));  // diagonal
    if (i < k) {
      // shared v_i side: [v_i -> 0] of P_i is (tb,2); [0 -> v_i] of P_{i+1} is (T_{i+1}^a, 0)
      bind(he_index(tb, 2), he_index(2 * i, 0));
      // other v_i pair: [v_{i-1} -> v_{i-1}+v_i] of P_i is (ta,1);
      // [v_i+v_{i+1} -> v_{i+1}] of P_{i+1} is (T_{i+1}^b, 1)
      bind(he_index(ta, 1), he_index(2 * i + 1, 1));
    }
  }
  // extremal v_0 pair of P_1: [0 -> v_0] is (0,0); [v_0+v_1 -> v_1] is (1,1)
  bind(he_index(0, 0), he_index(1, 1));
  // extremal v_k pair of P_k: [v_{k-1} -> v_{k-1}+v_k] is (2k-2,1); [v_k -> 0] is (2k-1,2)
  bind(he_index(2 * k - 2, 1), he_index(2 * k - 1, 2));
  s.rebuild_vertices();
  Diagnostics d = validate(s);
  if (!d.ok) throw SurfaceError("chain construction failed: " + d.message);
  return s;
}

Surface from_parallelogram_chain(const std::vector<std::pair<Vec2, Vec2>>& pairs) {
  if (pairs.empty()) throw SurfaceError("empty parallelogram chain");
  std::vector<Vec2> spine;
  spine.push_back(pairs[0].first);
  for (size_t i = 0; i < pairs.size(); ++i) {
    if (pairs[i].first != spine.back())
      throw SurfaceError("chained parallelograms must share a side vector (w_i == u_{i+1})");
    spine.push_back(pairs[i].second);
  }
  return chain_surface(spine);
}

int chain_slit_edge(const Surface& s) {
  // the self-glued v_0 pair is half-edges (0,0)-(1,1)
  if (s.num_tris() < 2 || s.glue[he_index(0, 0)] != he_index(1, 1))
    throw SurfaceError("not a chain surface");
  return edge_id_of_halfedge(s, he_index(0, 0));
}

}  // namespace slitsurf
