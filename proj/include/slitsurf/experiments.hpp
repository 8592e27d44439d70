#pragma once

// Counting experiments: growth of slit-disjoint saddle connections, linear
// growth of cylinders containing the slit, dyadic triangle-count bounds,
// bad-time measurement under the horocycle flow, and finite-depth direction
// exploration along successions of cylinders.

#include <string>
#include <vector>

#include "slitsurf/enumerate.hpp"
#include "slitsurf/nps.hpp"

namespace slitsurf {

struct CountRecord {
  Rat L_sq;
  double L = 0;
  long count_all = 0, count_cyl = 0, count_noninv = 0, count_inv = 0;
  double beta_len = 0;
  double ratio_linear = 0;    // count_all / (L/|beta|)
  double ratio_log_dm3 = 0;   // count_all / ((L/|beta|) log2(L/|beta|)^{d-3})
  double ratio_log_dm2 = 0;
};

std::vector<CountRecord> run_growth(const SlitSurface& s, const Involution& tau,
                                    const std::vector<Rat>& grid_L, int threads = 1);

struct SlopeFit {
  double slope = 0, intercept = 0, max_residual = 0;
  int points_used = 0;
};

// log2-log2 least squares of cylinder counts over the top half of the grid.
SlopeFit run_cylinder_linear(const SlitSurface& s, const Involution& tau,
                             const std::vector<Rat>& grid_L);

struct TriangleBoundRow {
  long j = 0;
  long count = 0;
  double constant = 0;  // count / 2^{j-l}
};
struct TriangleBoundReport {
  long ell = 0;
  std::vector<TriangleBoundRow> rows;
  double max_constant = 0;
  double spearman = 0;  // rank correlation of constant vs j
};
TriangleBoundReport run_triangle_bound(const SlitSurface& s, const Involution& tau, long dj_lo,
                                       long dj_hi);

struct BadTimesReport {
  Rat window_lo, window_hi;
  Rat bad_measure;
  Rat ratio;  // bad / window length
  long available_count = 0, bad_count = 0;
  std::vector<Availability> avails;  // availabilities meeting the window
};
// requires the slit horizontal (normalize first)
BadTimesReport run_bad_times(const SlitSurface& s, const Involution& tau, const Rat& T,
                             const BadnessConfig& cfg);

struct DirectionRecord {
  long level = 0;
  Vec2 dir;
  Rat gap_sin_sq;  // squared sine of the angle to the slit
};
struct DirectionTreeReport {
  std::vector<DirectionRecord> records;
  std::vector<Rat> min_gap_per_level;  // index 0 = level 1
};
DirectionTreeReport run_direction_tree(const Surface& s, const Involution& tau, int slit_edge,
                                       const Rat& L, int depth);

// CSV renderings (deterministic)
std::string growth_to_csv(const std::vector<CountRecord>& records);
std::string triangle_report_to_csv(const TriangleBoundReport& rep);
std::string directions_to_csv(const DirectionTreeReport& rep);

struct ExperimentError : std::runtime_error {
  explicit ExperimentError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace slitsurf
