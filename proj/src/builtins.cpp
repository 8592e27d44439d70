#include "slitsurf/builtins.hpp"

namespace slitsurf {

namespace {

// Two-parallelogram chain: a torus with two marked points (the chain corner
// classes) and the extremal edge as an invariant slit between them.
Builtin slit_torus_chain(const Vec2& v0, const Vec2& v1, const Vec2& v2) {
  Surface s = chain_surface({v0, v1, v2});
  return {s, chain_slit_edge(s)};
}

}  // namespace

Builtin builtin_surface(const std::string& name) {
  if (name == "square_torus") {
    Surface s = chain_surface({Vec2(1, 0), Vec2(0, 1)});
    return {s, -1};
  }
  if (name == "torus") {
    Surface s = chain_surface({Vec2(1, 0), Vec2(0, 1)});
    return {s, chain_slit_edge(s)};
  }
  if (name == "slit_square_torus") {
    // unit square torus, marked (0,0) and (1/2,0), slit between them
    return slit_torus_chain(Vec2(Rat(1, 2), Rat(0)), Vec2(0, 1), Vec2(Rat(-1, 2), Rat(0)));
  }
  if (name == "hyp2_chain") {
    Surface s = chain_surface({Vec2(1, 0), Vec2(0, 1), Vec2(-1, 1), Vec2(-1, -1)});
    return {s, chain_slit_edge(s)};
  }
  if (name == "hyp4_chain") {
    Surface s = chain_surface({Vec2(-3, 0), Vec2(-2, -6), Vec2(2, -2), Vec2(4, 2), Vec2(-1, 4),
                               Vec2(-4, 4)});
    return {s, chain_slit_edge(s)};
  }
  throw SurfaceError("unknown builtin surface: " + name);
}

std::vector<std::string> builtin_names() {
  return {"square_torus", "torus", "slit_square_torus", "hyp2_chain", "hyp4_chain"};
}

long RatRng::uniform(long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  return d(eng);
}

Rat RatRng::small_rat(long max_num, long max_den) {
  long n = uniform(-max_num, max_num);
  long d = uniform(1, max_den);
  Rat r(n, d);
  r.canonicalize();
  return r;
}

Vec2 RatRng::vec(long max_num, long max_den) {
  return {small_rat(max_num, max_den), small_rat(max_num, max_den)};
}

Builtin random_slit_torus(RatRng& rng) {
  Builtin b = random_chain(rng, 2);
  return b;
}

Builtin random_chain(RatRng& rng, int k) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<Vec2> spine;
    spine.push_back(rng.vec());
    if (spine[0].is_zero()) continue;
    bool ok = true;
    for (int i = 1; i <= k; ++i) {
      bool found = false;
      for (int tries = 0; tries < 64 && !found; ++tries) {
        Vec2 w = rng.vec();
        if (sgn(cross(spine.back(), w)) > 0) {
          spine.push_back(w);
          found = true;
        }
      }
      if (!found) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    Surface s = chain_surface(spine);
    return {s, chain_slit_edge(s)};
  }
  throw SurfaceError("random chain generation failed");
}

}  // namespace slitsurf
