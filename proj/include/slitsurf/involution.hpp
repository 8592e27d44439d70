#pragma once

// The hyperelliptic involution as a pair of permutations (triangles and
// half-edges), classification of saddle connections, and the cut-and-glue
// surgery along a non-invariant pair sigma, tau(sigma).

#include <optional>
#include <vector>

#include "slitsurf/saddle.hpp"
#include "slitsurf/surface.hpp"

namespace slitsurf {

struct Involution {
  std::vector<int> tri_map;   // triangle -> triangle
  std::vector<int> edge_map;  // half-edge -> half-edge

  Corner map_corner(const Corner& c) const {
    int h = edge_map[he_index(c.tri, c.k)];
    return {h / 3, h % 3};
  }
  int map_halfedge(int h) const { return edge_map[h]; }
};

// order 2, fixed-point-free on triangles, negates holonomy, commutes with
// the gluing.
Diagnostics validate_involution(const Surface& s, const Involution& tau);

// All combinatorial involutions of the triangulation (usually 0 or 1; tori
// have several).
std::vector<Involution> find_involutions(const Surface& s);

// Preferred involution: one fixing the designated slit edge set-wise if such
// exists; ties broken by lowest image triangle of triangle 0.
std::optional<Involution> find_involution(const Surface& s,
                                          std::optional<int> prefer_slit_edge = std::nullopt);

SaddleConn tau_image(const Involution& tau, const SaddleConn& sc);
bool is_invariant(const Involution& tau, const SaddleConn& sc);

// Edge image as an edge id.
int tau_edge(const Surface& s, const Involution& tau, int edge_id);

// Saddle connection record for a glued edge (canonical orientation).
SaddleConn edge_saddle(const Surface& s, int edge_id);

// Result of cutting along sigma and tau(sigma) (inserted as edges first) and
// regluing each component's sigma-side to its tau(sigma)-side.
struct CutPiece {
  Surface surface;
  Involution tau;
  int new_slit_edge;          // the glued sigma ~ tau(sigma) edge, invariant
  std::vector<int> tri_from;  // new triangle index -> triangle index in the cut input
  bool contains_marker = false;
};

struct CutResult {
  // The surface after equivariant edge insertion, before cutting (useful for
  // locating tracked data), plus the two closed pieces.
  Surface prepared;
  Involution prepared_tau;
  int sigma_edge, tau_sigma_edge;
  CutPiece piece[2];          // piece[0] contains the marker edge when one is given
  int marker_edge_piece0 = -1;  // tracked marker edge id inside piece[0]
};

// sigma must be non-invariant. marker_edge (optional, on the input surface)
// is an edge disjoint from sigma and tau(sigma) used to orient which piece
// comes first; its id is tracked through the insertion flips.
CutResult cut_and_glue(const Surface& s, const Involution& tau, const SaddleConn& sigma,
                       std::optional<int> marker_edge = std::nullopt);

// tracked marker edge id on `prepared` after cut_and_glue, and its edge id
// inside the piece that contains it.
int marker_edge_in_piece(const CutResult& cr);

// True iff a and b land in different components of the cut along
// sigma, tau(sigma). Both must be interiorly disjoint from the pair.
bool separates(const Surface& s, const Involution& tau, const SaddleConn& sigma,
               const SaddleConn& a, const SaddleConn& b);

struct InvolutionError : std::runtime_error {
  explicit InvolutionError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace slitsurf
