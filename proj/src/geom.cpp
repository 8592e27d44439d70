#include "slitsurf/geom.hpp"

#include <cstdlib>

namespace slitsurf {

Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw GeomError("empty rational literal");
  auto dotpos = s.find('.');
  if (dotpos != std::string::npos) {
    // decimal: sign, integer part, fraction part
    std::string head = s.substr(0, dotpos), tail = s.substr(dotpos + 1);
    if (tail.find_first_not_of("0123456789") != std::string::npos)
      throw GeomError("bad decimal literal: " + s);
    bool neg = false;
    if (!head.empty() && (head[0] == '-' || head[0] == '+')) {
      neg = head[0] == '-';
      head = head.substr(1);
    }
    if (head.empty()) head = "0";
    Int ip(head), num;
    Int den = 1;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, tail.empty() ? 0 : tail.size());
    num = ip * den + (tail.empty() ? Int(0) : Int(tail));
    if (neg) num = -num;
    Rat r(num, den);
    r.canonicalize();
    return r;
  }
  Rat r;
  if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
    throw GeomError("bad rational literal: " + s);
  r.canonicalize();
  if (sgn(Rat(r.get_den())) <= 0) throw GeomError("nonpositive denominator: " + s);
  return r;
}

std::string rat_to_string(const Rat& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

bool vec_less(const Vec2& a, const Vec2& b) {
  int c = cmp(a.x, b.x);
  if (c != 0) return c < 0;
  return cmp(a.y, b.y) < 0;
}

long floor_log2(const Rat& r) {
  if (sgn(r) <= 0) throw GeomError("floor_log2 of nonpositive value");
  const Int& p = r.get_num();
  const Int& q = r.get_den();
  long j = static_cast<long>(mpz_sizeinbase(p.get_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 2));
  // r >= 2^j ?
  auto ge_pow2 = [&](long e) {
    Int lhs = p, rhs = q;
    if (e >= 0)
      mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), e);
    else
      mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), -e);
    return cmp(lhs, rhs) >= 0;
  };
  while (!ge_pow2(j)) --j;
  while (ge_pow2(j + 1)) ++j;
  return j;
}

long size_of(const Vec2& v) {
  if (v.is_zero()) throw GeomError("degenerate vector");
  long j2 = floor_log2(norm_sq(v));  // 2^{j2} <= |v|^2 < 2^{j2+1}
  // size j satisfies 2^{2j} <= |v|^2 < 2^{2j+2}
  return j2 >= 0 ? j2 / 2 : -((-j2 + 1) / 2);
}

long horizontal_size(const Rat& h) {
  if (sgn(h) == 0) throw GeomError("degenerate horizontal component");
  return floor_log2(abs(h));
}

Mat2 Mat2::inverse() const {
  Rat dt = det();
  if (sgn(dt) == 0) throw GeomError("singular matrix");
  return {d / dt, -b / dt, -c / dt, a / dt};
}

Mat2 align_to_horizontal(const Vec2& v) {
  if (v.is_zero()) throw GeomError("degenerate vector");
  return {v.x, v.y, -v.y, v.x};
}

Mat2 dilation_mat(const Rat& lambda) {
  if (sgn(lambda) <= 0) throw GeomError("nonpositive dilation factor");
  return {lambda, Rat(0), Rat(0), Rat(1) / lambda};
}

bool angle_at_most(const Vec2& u, const Vec2& v, const Rat& bound) {
  if (u.is_zero() || v.is_zero()) throw GeomError("degenerate vector");
  if (sgn(bound) < 0) return false;
  // sin^2 = cross^2 / (|u|^2 |v|^2) <= bound^2
  Rat c = cross(u, v);
  return c * c <= bound * bound * norm_sq(u) * norm_sq(v);
}

bool angle_at_most(const Vec2& u, const Vec2& v, const Rat& bound_num, const Rat& bound_den) {
  if (sgn(bound_den) == 0) throw GeomError("zero bound denominator");
  return angle_at_most(u, v, bound_num / bound_den);
}

bool eps_isolated(const Vec2& g, const Vec2& gp, const Rat& eps, const Rat& area) {
  if (g.is_zero() || gp.is_zero()) throw GeomError("degenerate vector");
  return abs(cross(g, gp)) >= eps * eps * area;
}

std::optional<Cone> cone_clip(const Cone& c, const Vec2& f, const Vec2& t) {
  if (sgn(cross(f, t)) <= 0) return std::nullopt;
  Cone r = c;
  if (sgn(cross(r.lo, f)) > 0) r.lo = f;
  if (sgn(cross(t, r.hi)) > 0) r.hi = t;
  if (!r.valid()) return std::nullopt;
  return r;
}

std::optional<Cone> cone_clip_halfplane(const Cone& c, const Vec2& e, int s) {
  // half plane {d : s*cross(e,d) > 0} is the pi-cone (f, -f) with f = s>0 ? e : -e
  Vec2 f = s > 0 ? e : -e;
  Cone r = c;
  if (sgn(cross(r.lo, f)) > 0) r.lo = f;
  Vec2 t = -f;
  if (sgn(cross(t, r.hi)) > 0) r.hi = t;
  if (!r.valid()) return std::nullopt;
  return r;
}

bool upper_canonical(const Vec2& v) {
  int sy = sgn(v.y);
  if (sy > 0) return true;
  if (sy < 0) return false;
  return sgn(v.x) > 0;
}

int compare_direction(const Vec2& a, const Vec2& b) {
  // both in the closed upper half with the (1,0)-side convention
  int c = sgn(cross(a, b));
  return c > 0 ? -1 : (c < 0 ? 1 : 0);
}

Rat dist_sq_origin_segment(const Vec2& p, const Vec2& q) {
  Vec2 d = q - p;
  Rat dd = norm_sq(d);
  if (sgn(dd) == 0) return norm_sq(p);
  Rat t = -dot(p, d) / dd;
  if (sgn(t) <= 0) return norm_sq(p);
  if (t >= 1) return norm_sq(q);
  Vec2 proj = p + d * t;
  return norm_sq(proj);
}

}  // namespace slitsurf
