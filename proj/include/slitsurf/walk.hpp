#pragma once

// Corridor walking and retriangulation: developing a straight segment from a
// corner through the gluing, edge flips (plain and involution-equivariant),
// and insertion of a saddle connection as a triangulation edge.

#include <optional>
#include <vector>

#include "slitsurf/involution.hpp"
#include "slitsurf/saddle.hpp"
#include "slitsurf/surface.hpp"

namespace slitsurf {

struct SegmentWalk {
  Corner end;                // arrival corner (sector the segment points back into)
  std::vector<int> crossed;  // half-edge indices crossed, in order (side we exited through)
};

// Develops the segment leaving `start` with displacement `hol`. Fails (with a
// reason) if the direction is outside the corner sector, the interior meets a
// vertex, or the walk crosses the slit edge. The segment must end at a vertex.
std::optional<SegmentWalk> develop_segment(const Surface& s, const Corner& start, const Vec2& hol,
                                           std::optional<int> slit_he = std::nullopt,
                                           std::string* why = nullptr);

// True if the saddle connection record denotes a real saddle connection.
bool check_saddle_connection(const Surface& s, const SaddleConn& sc,
                             std::optional<int> slit_he = std::nullopt);

bool quad_strictly_convex(const Surface& s, int h);

// Objects whose references must survive flips.
struct Tracked {
  std::vector<SaddleConn*> scs;
  std::vector<int*> halfedges;
};

// Flip the edge through half-edge h (the quad must be strictly convex).
// Returns the new diagonal's half-edge in the first quad triangle.
int flip_halfedge(Surface& s, int h, Tracked& tracked);

// Equivariant flip: flips h and tau(h) (single flip when tau fixes the edge),
// updating tau's permutations. Requires the two quads be disjoint when
// tau(h) is a different edge; returns false without changes otherwise.
bool flip_equivariant(Surface& s, Involution& tau, int h, Tracked& tracked);

// Insert gamma as an edge by flips. Returns the half-edge carrying gamma
// (oriented along gamma's holonomy from its start vertex when gamma is
// interior-direction; for along-edge input the existing half-edge).
int insert_edge_sc(Surface& s, SaddleConn gamma, Tracked& tracked,
                   std::optional<int> slit_he = std::nullopt, int max_flips = 100000);

// tau-equivariant insertion of sigma and tau(sigma) as edges.
struct PairInsert {
  int sigma_he;
  int tau_sigma_he;
};
PairInsert insert_edge_pair_equivariant(Surface& s, Involution& tau, const SaddleConn& sigma,
                                        Tracked& tracked, int max_flips = 100000);

// First singularity on the open ray from a corner, or the slit boundary if
// the ray runs into it first.
struct RayHit {
  bool hit_vertex = false;
  Vec2 point;     // position relative to the ray origin
  Corner corner;  // arrival corner when hit_vertex
  bool hit_slit = false;
  Vec2 slit_point;  // where the ray met the slit edge (relative position)
};
RayHit ray_first_event(const Surface& s, const Corner& start, const Vec2& dir,
                       std::optional<int> slit_he, long max_steps = 1000000);

struct WalkError : std::runtime_error {
  explicit WalkError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace slitsurf
