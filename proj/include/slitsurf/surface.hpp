#pragma once

// A translation surface as positively oriented triangles glued in pairs by
// translation. Half-edge h = 3*tri + side; side s runs from vertex s to
// vertex s+1 (mod 3), so the corner at vertex k is bounded by the outgoing
// rays e_k and -e_{k-1}. All surfaces here stay triangulated.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "slitsurf/geom.hpp"

namespace slitsurf {

struct HalfEdge {
  int tri = -1;
  int side = 0;
  bool operator==(const HalfEdge& o) const { return tri == o.tri && side == o.side; }
};

inline int he_index(int tri, int side) { return 3 * tri + side; }
inline int he_index(const HalfEdge& h) { return 3 * h.tri + h.side; }
inline HalfEdge he_of(int idx) { return {idx / 3, idx % 3}; }

struct Triangle {
  std::array<Vec2, 3> e;  // e[0]+e[1]+e[2] = 0, cross(e[0],e[1]) > 0
  // planar reference coordinates of vertex k, with vertex 0 at the origin
  Vec2 ref(int k) const {
    if (k == 0) return Vec2(0, 0);
    if (k == 1) return e[0];
    return e[0] + e[1];
  }
  Rat doubled_area() const { return cross(e[0], e[1]); }
};

struct Corner {
  int tri = -1;
  int k = 0;  // vertex slot
  bool operator==(const Corner& o) const { return tri == o.tri && k == o.k; }
  bool operator<(const Corner& o) const { return tri != o.tri ? tri < o.tri : k < o.k; }
};

struct Diagnostics {
  bool ok = true;
  std::string message;
  static Diagnostics good() { return {}; }
  static Diagnostics bad(std::string m) { return {false, std::move(m)}; }
};

struct StratumSignature {
  std::vector<int> kappa;  // zero orders, ascending, may contain 0 for marked points
  int genus = 0;
  int dim_c = 0;
  bool operator==(const StratumSignature& o) const {
    return kappa == o.kappa && genus == o.genus && dim_c == o.dim_c;
  }
};

class Surface {
 public:
  std::vector<Triangle> tris;
  std::vector<int> glue;    // half-edge index -> half-edge index (involution)
  std::vector<int> vclass;  // corner (he index) -> vertex class id
  int num_vertices = 0;

  int num_tris() const { return static_cast<int>(tris.size()); }
  const Vec2& evec(int h) const { return tris[h / 3].e[h % 3]; }
  const Vec2& evec(const HalfEdge& h) const { return tris[h.tri].e[h.side]; }
  int vertex_at(const Corner& c) const { return vclass[he_index(c.tri, c.k)]; }

  // Rebuilds vclass/num_vertices from the gluing. Call after surgery.
  void rebuild_vertices();

  // Walking ccw around the vertex at corner (t,k): crosses side (k+2)%3.
  Corner next_ccw(const Corner& c) const {
    int part = glue[he_index(c.tri, (c.k + 2) % 3)];
    return {part / 3, part % 3};
  }
  Corner prev_ccw(const Corner& c) const {
    int part = glue[he_index(c.tri, c.k)];
    return {part / 3, (part % 3 + 1) % 3};
  }
};

Diagnostics validate(const Surface& s);
Rat area(const Surface& s);
StratumSignature stratum(const Surface& s);

// Edge = glued half-edge pair. Edge ids are assigned in increasing order of
// the smaller half-edge index; this is the numbering the CLI exposes.
struct Edge {
  int h1, h2;  // h1 < h2
};
std::vector<Edge> edge_list(const Surface& s);
int edge_id_of_halfedge(const Surface& s, int he);

// A closed surface with one designated slit edge. Enumeration and the band
// sweep treat the slit as an uncrossable boundary.
struct SlitSurface {
  Surface s;
  int slit_edge = -1;  // edge id

  // designated half-edge (the "top" side): tops[0]; bottom: tops[1]
  std::array<int, 2> slit_halfedges() const;
  Vec2 slit_hol() const;  // holonomy of the top half-edge
};

SlitSurface make_slit(const Surface& s, int edge_id);

// Chain of parallelograms in the zig-zag pattern: spine vectors v_0..v_k give
// k parallelograms P_i spanned by (v_{i-1}, v_i), consecutive parallelograms
// glued along both v_i-sides, extremal side pairs self-identified. Requires
// cross(v_{i-1}, v_i) > 0 for all i. The edge carrying v_0 (the self-glued
// extremal pair) is an invariant saddle connection and the natural slit.
Surface chain_surface(const std::vector<Vec2>& spine);

// Spec-facing variant: per-parallelogram spanning pairs; consecutive pairs
// must share the chained vector (w_i == u_{i+1}).
Surface from_parallelogram_chain(const std::vector<std::pair<Vec2, Vec2>>& pairs);

// Edge id of the self-glued v_0 pair in a chain_surface result.
int chain_slit_edge(const Surface& s);

struct SurfaceError : std::runtime_error {
  explicit SurfaceError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace slitsurf
