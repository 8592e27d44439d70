#pragma once

// Saddle connection enumeration (wedge-refinement unfolding), dyadic size
// buckets, C-separation, and the slit-triangle machinery: embedded triangles
// with the slit as a side, and simple cylinders containing the slit.

#include <functional>
#include <optional>
#include <vector>

#include "slitsurf/involution.hpp"
#include "slitsurf/saddle.hpp"
#include "slitsurf/surface.hpp"

namespace slitsurf {

struct EnumResult {
  std::vector<SaddleConn> conns;  // canonical representatives, sorted
  Rat bound_sq;
  std::optional<int> slit_edge;
};

// All saddle connections with |hol|^2 <= bound_sq, one canonical record per
// unoriented connection, sorted by (|hol|^2, direction, start, end). With a
// slit, corridors never cross it and the slit's own boundary pair is not
// reported.
EnumResult enumerate_sc(const Surface& s, const Rat& bound_sq, int threads = 1);
EnumResult enumerate_sc(const SlitSurface& s, const Rat& bound_sq, int threads = 1);

std::vector<SaddleConn> size_bucket(const EnumResult& r, long j);

// One representative per parallel/involution orbit (the counting convention
// used for the growth theorems; off by default everywhere else).
std::vector<SaddleConn> dedupe_paper_convention(const EnumResult& r, const Involution& tau);

// True iff some non-invariant rho in `search` with |rho|^2 < |beta|^2 / C^2
// has a and beta on opposite sides of the cut along rho, tau(rho).
bool is_C_separated(const Surface& s, const Involution& tau, const SaddleConn& alpha,
                    const SaddleConn& beta, const Rat& C, const EnumResult& search);

// An embedded triangle with the slit as one side. rho runs from the slit's
// designated origin A to the apex, sigma from the apex to B; rho + sigma is
// the slit holonomy. Apex coordinates are relative to A.
struct SlitTriangle {
  SaddleConn rho, sigma;
  Vec2 apex;
  bool above = true;  // on the designated half-edge's side
};

// All embedded triangles over the slit whose two non-slit sides both have
// squared length <= side_bound_sq.
std::vector<SlitTriangle> triangles_over_slit(const SlitSurface& s, const Rat& side_bound_sq,
                                              bool both_sides);

// Verifies one candidate apex; returns the triangle's sides when the open
// triangle embeds in the slit surface.
std::optional<SlitTriangle> triangle_over_slit_embedded(const SlitSurface& s, const Vec2& apex,
                                                        bool above);

// Non-invariant saddle connections of size j forming a triangle with the slit.
std::vector<SaddleConn> triangles_with_side(const SlitSurface& s, const Involution& tau, long j);

struct CylinderCert {
  SaddleConn boundary;   // non-invariant; the other boundary is its tau image
  SaddleConn crossing;   // invariant side crossing the cylinder
  Vec2 apex;             // apex of the defining triangle, relative to A
  Rat circumference_sq;  // |boundary|^2
  Rat area;              // |boundary x slit|
  bool contains_slit = true;
};

// Simple cylinders containing the slit with circumference^2 <= bound_sq,
// one per unoriented core class.
std::vector<CylinderCert> simple_cylinders_containing(const SlitSurface& s, const Involution& tau,
                                                      const Rat& bound_sq);

struct EnumError : std::runtime_error {
  explicit EnumError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace slitsurf
