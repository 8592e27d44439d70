#include "slitsurf/nps.hpp"

#include <algorithm>
#include <queue>

#include "slitsurf/walk.hpp"

namespace slitsurf {

namespace {

void require_horizontal_slit(const SlitSurface& ss, Rat& L_out) {
  Vec2 beta = ss.slit_hol();
  if (sgn(beta.y) != 0 || sgn(beta.x) <= 0)
    throw NpsError("slit must be horizontal with positive holonomy");
  L_out = beta.x;
}

struct Band {
  int tri;
  Vec2 shift;
  int entry;
  Rat xlo, xhi;
};

struct QE {
  Rat key;
  long seq;
  int kind;  // 0 band, 1 hit
  Band band;
  Rat hx;  // hit x
  Corner hc;
};

struct QCmp {
  bool operator()(const QE& a, const QE& b) const {
    int c = cmp(a.key, b.key);
    if (c != 0) return c > 0;
    if (a.kind != b.kind) return a.kind > b.kind;  // bands first at equal height
    return a.seq > b.seq;
  }
};

// corner at the slit's left endpoint A whose sector (half-open on the ccw
// side) contains the direction d, walking the fan above the slit
Corner fan_corner_at_A(const SlitSurface& ss, const Vec2& d) {
  auto hes = ss.slit_halfedges();
  Corner c{hes[0] / 3, hes[0] % 3};
  const Surface& s = ss.s;
  for (int guard = 0; guard < 3 * s.num_tris() + 2; ++guard) {
    Vec2 a = s.tris[c.tri].e[c.k];
    Vec2 b = -s.tris[c.tri].e[(c.k + 2) % 3];
    if (sgn(cross(a, d)) >= 0 && sgn(cross(d, b)) > 0) return c;
    int crossed = he_index(c.tri, (c.k + 2) % 3);
    if (crossed == hes[0] || crossed == hes[1])
      throw NpsError("direction not reachable above the slit");
    c = s.next_ccw(c);
  }
  throw NpsError("corner fan walk did not terminate");
}

}  // namespace

SweepOutcome nearest_zero_above(const SlitSurface& ss, long budget) {
  Rat L;
  require_horizontal_slit(ss, L);
  auto hes = ss.slit_halfedges();
  const Surface& s = ss.s;
  int t0 = hes[0] / 3, s0 = hes[0] % 3;

  std::priority_queue<QE, std::vector<QE>, QCmp> pq;
  long seq = 0;
  {
    QE qe;
    qe.key = 0;
    qe.seq = seq++;
    qe.kind = 0;
    qe.band = {t0, -s.tris[t0].ref(s0), s0, Rat(0), L};
    pq.push(qe);
  }
  struct Return {
    Rat a, b, y;
  };
  std::vector<Return> returns;

  auto continue_band = [&](const Band& bd, int side, const Rat& a, const Rat& b,
                           const std::array<Vec2, 3>& P) {
    if (!(a < b)) return;
    int h = he_index(bd.tri, side);
    if (h == hes[0] || h == hes[1]) {
      // the flow reached the slit from below
      if (h != hes[1]) throw NpsError("band returned through the slit top side");
      Vec2 ep = P[side];
      if (sgn(s.evec(h).y) != 0) throw NpsError("slit lift not horizontal in sweep");
      returns.push_back({a, b, ep.y});
      return;
    }
    int g = s.glue[h];
    int nt = g / 3, ns = g % 3;
    Vec2 nshift = P[(side + 1) % 3] - s.tris[nt].ref(ns);
    // entry edge of the new band is the crossed segment; min height over [a,b]
    Vec2 p = P[side], q = P[(side + 1) % 3];
    Rat dx = q.x - p.x;
    if (sgn(dx) == 0) throw NpsError("vertical side chosen as band roof");
    auto y_at = [&](const Rat& x) -> Rat { return p.y + (x - p.x) * (q.y - p.y) / dx; };
    Rat ya = y_at(a), yb = y_at(b);
    QE qe;
    qe.key = ya < yb ? ya : yb;
    qe.seq = seq++;
    qe.kind = 0;
    qe.band = {nt, nshift, ns, a, b};
    pq.push(qe);
  };

  long steps = 0;
  std::optional<Rat> best_y;
  std::optional<Rat> best_x;
  std::optional<Corner> best_c;
  while (!pq.empty()) {
    if (++steps > budget) throw SweepBudgetExceeded();
    QE qe = pq.top();
    if (qe.kind == 1) {
      if (best_y && *best_y < qe.key) break;  // strictly lower hit already final
      pq.pop();
      if (!best_y || qe.key < *best_y || (qe.key == *best_y && qe.hx < *best_x)) {
        best_y = qe.key;
        best_x = qe.hx;
        best_c = qe.hc;
      }
      continue;
    }
    if (best_y && *best_y <= qe.key) break;  // pending bands cannot hit lower
    pq.pop();
    const Band bd = qe.band;
    std::array<Vec2, 3> P;
    for (int i = 0; i < 3; ++i) P[i] = s.tris[bd.tri].ref(i) + bd.shift;
    Vec2 w = P[(bd.entry + 2) % 3];
    if (bd.xlo < w.x && w.x < bd.xhi) {
      if (sgn(w.y) <= 0) throw NpsError("band hit below the slit line");
      QE hit;
      hit.key = w.y;
      hit.seq = seq++;
      hit.kind = 1;
      hit.hx = w.x;
      hit.hc = {bd.tri, (bd.entry + 2) % 3};
      pq.push(hit);
      continue_band(bd, (bd.entry + 2) % 3, bd.xlo, w.x, P);
      continue_band(bd, (bd.entry + 1) % 3, w.x, bd.xhi, P);
    } else if (w.x <= bd.xlo) {
      continue_band(bd, (bd.entry + 1) % 3, bd.xlo, bd.xhi, P);
    } else {
      continue_band(bd, (bd.entry + 2) % 3, bd.xlo, bd.xhi, P);
    }
  }

  if (!best_y) {
    // periodic: the full band must have come back in one piece
    if (returns.size() != 1 || sgn(returns[0].a) != 0 || returns[0].b != L ||
        sgn(returns[0].y) <= 0)
      throw NpsError("periodic sweep did not return the full band");
    VerticalCylinder vc;
    vc.circumference = returns[0].y;
    Corner ca = fan_corner_at_A(ss, Vec2(Rat(0), Rat(1)));
    RayHit rh = ray_first_event(s, ca, Vec2(Rat(0), Rat(1)), hes[0]);
    if (!rh.hit_vertex) throw NpsError("vertical boundary ray found no vertex");
    if (sgn(rh.point.x) != 0) throw NpsError("vertical boundary ray left the boundary");
    vc.simple = rh.point.y == vc.circumference;
    if (vc.simple) {
      SaddleConn b{ca, rh.corner, rh.point};
      vc.boundary = canonical(b);
    }
    return vc;
  }

  Vec2 apex(*best_x, *best_y);
  auto tri = triangle_over_slit_embedded(ss, apex, true);
  if (!tri) throw NpsError("sweep apex triangle fails the embedding check");
  ApexCert ac;
  ac.rho = tri->rho;
  ac.sigma = tri->sigma;
  ac.apex = apex;
  ac.parallelogram_area = abs(cross(Vec2(L, Rat(0)), apex));
  return ac;
}

namespace {

std::optional<CylinderCert> cert_from_triangle(const SlitTriangle& tri, const Involution& tau,
                                               const Vec2& beta) {
  bool rinv = is_invariant(tau, tri.rho);
  bool sinv = is_invariant(tau, tri.sigma);
  if (rinv == sinv) return std::nullopt;
  const SaddleConn& boundary = rinv ? tri.sigma : tri.rho;
  const SaddleConn& crossing = rinv ? tri.rho : tri.sigma;
  CylinderCert c;
  c.boundary = canonical(boundary);
  c.crossing = canonical(crossing);
  c.apex = tri.apex;
  c.circumference_sq = norm_sq(boundary.hol);
  c.area = abs(cross(boundary.hol, beta));
  c.contains_slit = true;
  return c;
}

}  // namespace

std::optional<CylinderCert> validate_cylinder_on(const SlitSurface& ss, const Involution& tau,
                                                 const Vec2& apex) {
  auto tri = triangle_over_slit_embedded(ss, apex, true);
  if (!tri) return std::nullopt;
  return cert_from_triangle(*tri, tau, ss.slit_hol());
}

NpsResult nps_find_simple_cylinder(const Surface& s0, const Involution& tau0, int slit_edge0,
                                   const Rat& perturb) {
  {
    SaddleConn beta0 = edge_saddle(s0, slit_edge0);
    if (!is_invariant(tau0, beta0)) throw NpsError("slit is not invariant");
  }
  int dim0 = stratum(s0).dim_c;
  if (dim0 < 3)
    throw NpsError("stratum too small: every saddle connection is invariant on the base torus");
  if (sgn(perturb) <= 0) throw NpsError("perturbation step must be positive");
  NormalizedSlit norm = normalize_slit_horizontal(make_slit(s0, slit_edge0));

  std::vector<NpsStep> attempt_trace;
  for (int attempt = 0; attempt < 64; ++attempt) {
    Rat p(0);
    Mat2 M = norm.map;
    SlitSurface cur = norm.s;
    if (attempt > 0) {
      Int den = 1;
      mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), attempt - 1);
      p = perturb / Rat(den);
      M = horocycle_mat(p) * norm.map;
      cur = SlitSurface{horocycle(norm.s.s, p), norm.s.slit_edge};
    }
    Involution tau = tau0;
    NpsResult res;
    res.trace = attempt_trace;
    res.total_map = M;
    std::optional<Vec2> found_apex;
    bool retry = false;
    while (!retry && !found_apex) {
      SweepOutcome out;
      try {
        out = nearest_zero_above(cur);
      } catch (const SweepBudgetExceeded&) {
        retry = true;
        break;
      }
      if (std::holds_alternative<VerticalCylinder>(out)) {
        const auto& vc = std::get<VerticalCylinder>(out);
        if (!vc.simple) {
          retry = true;
          break;
        }
        found_apex = Vec2(Rat(0), vc.circumference);
        break;
      }
      ApexCert ac = std::get<ApexCert>(out);
      bool rinv = is_invariant(tau, ac.rho);
      bool sinv = is_invariant(tau, ac.sigma);
      if (rinv && sinv) throw NpsError("triangle over slit with two invariant sides");
      if (rinv || sinv) {
        found_apex = ac.apex;
        break;
      }
      // shear sigma vertical, cut along it, keep the slit component
      Rat st = -ac.sigma.hol.x / ac.sigma.hol.y;
      Surface sheared = horocycle(cur.s, st);
      M = horocycle_mat(st) * M;
      SaddleConn sig{ac.sigma.start, ac.sigma.end, horocycle_mat(st) * ac.sigma.hol};
      CutResult cr = cut_and_glue(sheared, tau, sig, cur.slit_edge);
      NpsStep step;
      step.rho_hol = ac.rho.hol;
      step.sigma_hol = ac.sigma.hol;
      step.shear_time = st;
      step.excised_kappa = stratum(cr.piece[1].surface).kappa;
      step.perturb_used = p;
      res.trace.push_back(step);
      cur = SlitSurface{cr.piece[0].surface, marker_edge_in_piece(cr)};
      tau = cr.piece[0].tau;
      ++res.iterations;
      if (res.iterations > dim0 - 2) throw NpsError("iteration bound d-2 exceeded");
    }
    if (retry || !found_apex) {
      NpsStep step;
      step.periodic_restart = true;
      step.perturb_used = p;
      attempt_trace.push_back(step);
      continue;
    }
    // pull the apex back to the original frame and re-validate there
    Vec2 apex_orig = M.inverse() * *found_apex;
    auto cert = validate_cylinder_on(make_slit(s0, slit_edge0), tau0, apex_orig);
    if (!cert) {
      NpsStep step;
      step.periodic_restart = true;
      step.perturb_used = p;
      attempt_trace.push_back(step);
      continue;
    }
    res.cert = *cert;
    return res;
  }
  throw NpsError("renormalization failed after the perturbation schedule");
}

std::optional<Availability> availability(const SlitSurface& ss, const SaddleConn& rho) {
  Rat L;
  require_horizontal_slit(ss, L);
  SaddleConn r = canonical(rho);
  if (sgn(r.hol.y) <= 0) return std::nullopt;
  Rat h = r.hol.x, v = r.hol.y;
  Rat lo = -h / v, hi = (L - h) / v;
  Rat smid = (lo + hi) / 2;
  SlitSurface sheared{horocycle(ss.s, smid), ss.slit_edge};
  Vec2 apex_mid = horocycle_mat(smid) * r.hol;
  auto tri = triangle_over_slit_embedded(sheared, apex_mid, true);
  if (!tri) return std::nullopt;
  SaddleConn want = canonical(SaddleConn{r.start, r.end, apex_mid});
  if (!canonical(tri->rho).same_oriented(want)) return std::nullopt;
  return Availability{r, h, v, lo, hi};
}

BadnessConfig BadnessConfig::defaults(int dim_c) {
  BadnessConfig cfg;
  cfg.eps = Rat(1, 4);
  cfg.m0 = cfg.eps * cfg.eps / Rat(4096 * std::max(1, dim_c));
  return cfg;
}

bool is_bad(const Availability& a, const BadnessConfig& cfg, const Rat& area,
            const Rat& slit_len_sq) {
  return a.v * a.v * slit_len_sq < cfg.m0 * cfg.m0 * area * area;
}

namespace {

void successions_rec(const SlitSurface& cur, const Involution& tau,
                     const std::vector<std::pair<Rat, Rat>>& ranges, size_t idx,
                     std::vector<CylinderCert>& prefix, std::vector<SuccessionChain>& out) {
  if (idx == ranges.size()) {
    out.push_back({prefix});
    return;
  }
  const auto& [lo, hi] = ranges[idx];
  auto certs = simple_cylinders_containing(cur, tau, hi);
  for (const auto& cert : certs) {
    if (cert.circumference_sq < lo) continue;
    prefix.push_back(cert);
    if (idx + 1 == ranges.size()) {
      out.push_back({prefix});
    } else {
      CutResult cr = cut_and_glue(cur.s, tau, cert.boundary, cur.slit_edge);
      if (stratum(cr.piece[0].surface).genus != 1)
        throw NpsError("excised cylinder does not close to a torus");
      SlitSurface next{cr.piece[1].surface, cr.piece[1].new_slit_edge};
      successions_rec(next, cr.piece[1].tau, ranges, idx + 1, prefix, out);
    }
    prefix.pop_back();
  }
}

}  // namespace

std::vector<SuccessionChain> successions(const Surface& s, const Involution& tau, int slit_edge,
                                         const std::vector<std::pair<Rat, Rat>>& ranges) {
  int dim = stratum(s).dim_c;
  if (static_cast<int>(ranges.size()) > dim - 2)
    throw NpsError("succession depth exceeds dim_c - 2");
  std::vector<SuccessionChain> out;
  std::vector<CylinderCert> prefix;
  if (ranges.empty()) return out;
  successions_rec(make_slit(s, slit_edge), tau, ranges, 0, prefix, out);
  return out;
}

namespace {

// 2x2 integer lattice in Hermite-ish form: rows r1 = (a,b), r2 = (0,c)
struct IntLattice {
  Int a = 0, b = 0, c = 0;

  void insert(Int x, Int y) {
    // eliminate y against c
    if (sgn(y) != 0) {
      if (sgn(c) == 0) {
        // swap roles to keep r2 = (0, *): first reduce x against a
      }
    }
    // general insertion: reduce (x,y) against r1 to kill x, then fold into c
    if (sgn(x) != 0) {
      if (sgn(a) == 0) {
        std::swap(a, x);
        std::swap(b, y);
      } else {
        Int g, u, v;
        mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(), x.get_mpz_t());
        Int a1 = g;
        Int b1 = u * b + v * y;
        Int y2 = (a / g) * y - (x / g) * b;
        a = a1;
        b = b1;
        x = 0;
        y = y2;
      }
    }
    if (sgn(y) != 0) {
      if (sgn(c) == 0)
        c = abs(y);
      else
        mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), y.get_mpz_t());
    }
  }
};

Pgram torus_base_parallelogram(const Surface& s, int slit_edge) {
  // develop placements over a spanning tree; non-tree gluings give periods
  int T = s.num_tris();
  std::vector<std::optional<Vec2>> shift(T);
  shift[0] = Vec2(0, 0);
  std::vector<int> stack{0};
  std::vector<Vec2> periods;
  std::vector<bool> seen_edge(3 * T, false);
  while (!stack.empty()) {
    int t = stack.back();
    stack.pop_back();
    for (int k = 0; k < 3; ++k) {
      int h = he_index(t, k);
      if (seen_edge[h]) continue;
      int g = s.glue[h];
      seen_edge[h] = seen_edge[g] = true;
      int u = g / 3, us = g % 3;
      Vec2 expected = (s.tris[t].ref((k + 1) % 3) + *shift[t]) - s.tris[u].ref(us);
      if (!shift[u]) {
        shift[u] = expected;
        stack.push_back(u);
      } else {
        Vec2 d = expected - *shift[u];
        if (!d.is_zero()) periods.push_back(d);
      }
    }
  }
  // clear denominators
  Int D = 1;
  Vec2 sigma = edge_saddle(s, slit_edge).hol;
  auto lcm_push = [&](const Rat& r) {
    Int den = r.get_den();
    Int g;
    mpz_gcd(g.get_mpz_t(), D.get_mpz_t(), den.get_mpz_t());
    D = D / g * den;
  };
  for (const auto& v : periods) {
    lcm_push(v.x);
    lcm_push(v.y);
  }
  lcm_push(sigma.x);
  lcm_push(sigma.y);
  IntLattice lat;
  for (const auto& v : periods) {
    Rat xs = v.x * D, ys = v.y * D;
    lat.insert(Int(xs.get_num()), Int(ys.get_num()));
  }
  if (sgn(lat.a) == 0 || sgn(lat.c) == 0) throw NpsError("degenerate torus period lattice");
  // sigma in lattice coordinates
  Int sx = Int(Rat(sigma.x * D).get_num());
  Int sy = Int(Rat(sigma.y * D).get_num());
  if (!mpz_divisible_p(sx.get_mpz_t(), lat.a.get_mpz_t()))
    throw NpsError("slit holonomy not in the period lattice");
  Int alpha = sx / lat.a;
  Int rem = sy - alpha * lat.b;
  if (!mpz_divisible_p(rem.get_mpz_t(), lat.c.get_mpz_t()))
    throw NpsError("slit holonomy not in the period lattice");
  Int betac = rem / lat.c;
  Int g, u, v;
  mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), alpha.get_mpz_t(), betac.get_mpz_t());
  if (cmp(g, Int(1)) != 0 && cmp(g, Int(-1)) != 0)
    throw NpsError("slit holonomy not primitive in the torus lattice");
  // w with alpha * wv - betac * wu = +-1 -> (wu, wv) = (-v, u) works up to sign
  Int wu = -v, wv = u;
  Vec2 w{Rat(wu * lat.a) / D, Rat(wu * lat.b + wv * lat.c) / D};
  Rat cr = cross(sigma, w);
  if (sgn(cr) < 0) {
    w = -w;
    cr = -cr;
  }
  if (cr != area(s)) throw NpsError("torus base parallelogram has wrong area");
  return {sigma, w, cr};
}

}  // namespace

std::vector<Pgram> parallelogram_decomposition(const Surface& s, const Involution& tau,
                                               int slit_edge) {
  int dim = stratum(s).dim_c;
  if (dim == 2) return {torus_base_parallelogram(s, slit_edge)};
  NpsResult r = nps_find_simple_cylinder(s, tau, slit_edge);
  const CylinderCert& cert = r.cert;
  Vec2 beta = edge_saddle(s, slit_edge).hol;
  // the cylinder is the parallelogram spanned by the triangle's two sides
  Pgram first{cert.apex, beta - cert.apex, abs(cross(cert.apex, beta - cert.apex))};
  CutResult cr = cut_and_glue(s, tau, cert.boundary, slit_edge);
  if (stratum(cr.piece[0].surface).genus != 1)
    throw NpsError("excised cylinder does not close to a torus");
  int sub_dim = stratum(cr.piece[1].surface).dim_c;
  if (sub_dim != dim - 1) throw NpsError("cylinder excision did not drop dimension by one");
  std::vector<Pgram> rest =
      parallelogram_decomposition(cr.piece[1].surface, cr.piece[1].tau, cr.piece[1].new_slit_edge);
  std::vector<Pgram> out{first};
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

}  // namespace slitsurf
