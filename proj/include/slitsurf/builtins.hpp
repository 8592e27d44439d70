#pragma once

#include <random>
#include <string>
#include <vector>

#include "slitsurf/surface.hpp"

namespace slitsurf {

// Named builtin surfaces, addressable from the CLI:
//   square_torus       unit square torus, one vertex, genus 1
//   torus              single-parallelogram chain, loop slit (the base case)
//   slit_square_torus  unit square torus, marked (0,0) and (1/2,0), slit between them
//   hyp2_chain         square-tiled 3-parallelogram chain, genus 2
//   hyp4_chain         5-parallelogram chain following the standard picture, genus 3
struct Builtin {
  Surface surface;
  int slit_edge = -1;  // natural invariant slit, -1 if none designated
};

Builtin builtin_surface(const std::string& name);
std::vector<std::string> builtin_names();

// Seeded random rational surfaces (deterministic across runs/platforms).
struct RatRng {
  std::mt19937_64 eng;
  explicit RatRng(std::uint64_t seed) : eng(seed) {}
  long uniform(long lo, long hi);
  Rat small_rat(long max_num = 4, long max_den = 3);
  Vec2 vec(long max_num = 4, long max_den = 3);
};

// Random slit torus in H(0,0): two marked points, slit between them.
Builtin random_slit_torus(RatRng& rng);
// Random chain with k parallelograms; k=3 gives genus-2, k=5 genus-3 chains.
Builtin random_chain(RatRng& rng, int k);

}  // namespace slitsurf
