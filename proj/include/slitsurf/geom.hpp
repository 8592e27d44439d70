#pragma once

// Exact planar kernel: arbitrary-precision rational vectors, 2x2 matrices,
// and the sign-based predicates everything else is built on. No floating
// point, no square roots; lengths are always handled squared and angles
// through their sines (cross products).

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace slitsurf {

using Rat = mpq_class;
using Int = mpz_class;

inline int sgn(const Rat& r) { return mpq_sgn(r.get_mpq_t()); }

Rat rat_from_string(const std::string& s);  // "p/q", "p", or decimal "1.25"
std::string rat_to_string(const Rat& r);    // always "p/q", lowest terms, q>0

struct Vec2 {
  Rat x, y;
  Vec2() : x(0), y(0) {}
  Vec2(Rat xx, Rat yy) : x(std::move(xx)), y(std::move(yy)) {}
  Vec2(long xx, long yy) : x(xx), y(yy) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2 operator*(const Rat& s) const { return {x * s, y * s}; }
  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Vec2& o) const { return !(*this == o); }
  bool is_zero() const { return sgn(x) == 0 && sgn(y) == 0; }
};

inline Rat cross(const Vec2& u, const Vec2& v) { return u.x * v.y - u.y * v.x; }
inline Rat dot(const Vec2& u, const Vec2& v) { return u.x * v.x + u.y * v.y; }
inline Rat norm_sq(const Vec2& v) { return v.x * v.x + v.y * v.y; }

// Lexicographic order, used only to build deterministic keys.
bool vec_less(const Vec2& a, const Vec2& b);

// Largest j with 2^j <= r; requires r > 0. Exact.
long floor_log2(const Rat& r);

// Dyadic size: the unique j with 2^j <= |v| < 2^{j+1}, computed on |v|^2.
// Throws on the zero vector.
long size_of(const Vec2& v);

// Horizontal size of a nonzero horizontal component h: floor_log2(|h|).
long horizontal_size(const Rat& h);

struct Mat2 {
  Rat a, b, c, d;  // row-major [[a,b],[c,d]]
  Mat2() : a(1), b(0), c(0), d(1) {}
  Mat2(Rat aa, Rat bb, Rat cc, Rat dd)
      : a(std::move(aa)), b(std::move(bb)), c(std::move(cc)), d(std::move(dd)) {}

  static Mat2 identity() { return Mat2(); }
  Vec2 operator*(const Vec2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Rat det() const { return a * d - b * c; }
  Mat2 inverse() const;
  bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
};

// Rational rotation-scaling sending v to (|v|^2, 0). det = |v|^2 > 0.
Mat2 align_to_horizontal(const Vec2& v);

inline Mat2 horocycle_mat(const Rat& s) { return {Rat(1), s, Rat(0), Rat(1)}; }
Mat2 dilation_mat(const Rat& lambda);  // [[lambda,0],[0,1/lambda]], lambda > 0

// sin(angle(u,v)) <= bound, compared exactly on squares. bound >= 0.
bool angle_at_most(const Vec2& u, const Vec2& v, const Rat& bound);
bool angle_at_most(const Vec2& u, const Vec2& v, const Rat& bound_num, const Rat& bound_den);

// sin(angle) >= eps^2 * area / (|g||g'|), evaluated as |cross| >= eps^2 * area.
bool eps_isolated(const Vec2& g, const Vec2& gp, const Rat& eps, const Rat& area);

// Open angular cone {d : cross(lo,d) > 0 and cross(d,hi) > 0}; aperture <= pi.
// An aperture-pi cone is represented with hi = -lo.
struct Cone {
  Vec2 lo, hi;
  bool contains(const Vec2& d) const { return sgn(cross(lo, d)) > 0 && sgn(cross(d, hi)) > 0; }
  bool valid() const {
    int c = sgn(cross(lo, hi));
    if (c > 0) return true;
    return c == 0 && sgn(dot(lo, hi)) < 0;  // exactly pi
  }
};

// cone INTERSECT open wedge spanned ccw from f to t (assumes that wedge has
// aperture < pi when cross(f,t) > 0; empty if cross(f,t) <= 0).
std::optional<Cone> cone_clip(const Cone& c, const Vec2& f, const Vec2& t);

// cone INTERSECT open half plane {d : s * cross(e, d) > 0}, s = +-1.
std::optional<Cone> cone_clip_halfplane(const Cone& c, const Vec2& e, int s);

// Exactly one of v, -v satisfies y > 0 or (y == 0 and x > 0); true if v does.
bool upper_canonical(const Vec2& v);

// Angular order on upper-canonical vectors, measured ccw from (1,0).
// Returns negative/zero/positive like a comparator.
int compare_direction(const Vec2& a, const Vec2& b);

// Squared distance from the origin to the closed segment [p,q].
Rat dist_sq_origin_segment(const Vec2& p, const Vec2& q);

struct GeomError : std::runtime_error {
  explicit GeomError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace slitsurf
