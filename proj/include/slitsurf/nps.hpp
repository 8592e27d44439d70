#pragma once

// The renormalization loop producing simple cylinders containing an invariant
// slit: exact vertical band sweep to the nearest zero over the slit, shear
// and excise on non-invariant sides, availability windows and badness under
// the horocycle flow, successions of cylinders, and the parallelogram
// decomposition.

#include <variant>
#include <vector>

#include "slitsurf/enumerate.hpp"
#include "slitsurf/flows.hpp"
#include "slitsurf/involution.hpp"

namespace slitsurf {

struct ApexCert {
  SaddleConn rho;    // left slit endpoint A -> apex
  SaddleConn sigma;  // apex -> right slit endpoint B
  Vec2 apex;         // relative to A
  Rat parallelogram_area;  // |slit x rho|
};

struct VerticalCylinder {
  Rat circumference;  // full vertical return height
  bool simple;
  std::optional<SaddleConn> boundary;  // closed vertical connection at A when simple
};

using SweepOutcome = std::variant<ApexCert, VerticalCylinder>;

// Requires a horizontal slit with positive holonomy (normalize first).
// Sweeps the open slit upward; returns the nearest zero strictly above the
// slit interior (ties: leftmost), or the vertical cylinder if the full band
// returns without a hit.
SweepOutcome nearest_zero_above(const SlitSurface& s, long budget = 2000000);

struct NpsStep {
  Vec2 rho_hol, sigma_hol;      // apex sides at this step (step frame)
  Rat shear_time = 0;           // horocycle time applied to make sigma vertical
  std::vector<int> excised_kappa;  // stratum of the removed piece
  bool periodic_restart = false;
  Rat perturb_used = 0;
};

struct NpsResult {
  CylinderCert cert;  // on the ORIGINAL surface, validated there
  int iterations = 0;  // shear-excise count; at most dim_c - 2
  std::vector<NpsStep> trace;
  Mat2 total_map;  // original frame -> final working frame
};

NpsResult nps_find_simple_cylinder(const Surface& s, const Involution& tau, int slit_edge,
                                   const Rat& perturb = Rat(1, 2));

// Availability of rho (canonical representative, v > 0) as the A-side of a
// parallelogram with the slit as diagonal; slit must be horizontal.
struct Availability {
  SaddleConn rho;
  Rat h, v;
  Rat win_lo, win_hi;  // exact horocycle-time window; length = |slit| / v
};
std::optional<Availability> availability(const SlitSurface& s, const SaddleConn& rho);

struct BadnessConfig {
  Rat m0;
  Rat eps;
  // eps = 1/4 with the unnamed stratum constants replaced by 2^5:
  // m0 = eps^2 / (2^12 d)
  static BadnessConfig defaults(int dim_c);
};

// bad iff v * |slit| < m0 * area, compared on squares.
bool is_bad(const Availability& a, const BadnessConfig& cfg, const Rat& area,
            const Rat& slit_len_sq);

// Depth-first succession of cylinders: level i collects simple cylinders
// containing the current slit with circumference^2 in ranges[i], excises each
// and recurses on the complement. Holonomies stay valid on the input surface.
struct SuccessionChain {
  std::vector<CylinderCert> levels;
};
std::vector<SuccessionChain> successions(const Surface& s, const Involution& tau, int slit_edge,
                                         const std::vector<std::pair<Rat, Rat>>& ranges);

struct Pgram {
  Vec2 u, w;
  Rat area;
};
// Exactly dim_c - 1 invariant parallelograms with vertices at singularities;
// the slit is interior to the first one.
std::vector<Pgram> parallelogram_decomposition(const Surface& s, const Involution& tau,
                                               int slit_edge);

// Re-validates a cylinder candidate from its apex on a given surface.
std::optional<CylinderCert> validate_cylinder_on(const SlitSurface& ss, const Involution& tau,
                                                 const Vec2& apex);

struct NpsError : std::runtime_error {
  explicit NpsError(const std::string& m) : std::runtime_error(m) {}
};

// near-periodic vertical direction: the caller perturbs and retries
struct SweepBudgetExceeded : NpsError {
  SweepBudgetExceeded() : NpsError("band sweep budget exceeded") {}
};

}  // namespace slitsurf
