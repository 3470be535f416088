#include "primeapprox/quad.hpp"

#include <cmath>
#include <stdexcept>

namespace primeapprox {

double QuadVal::to_double() const {
  return rat_d(x) + rat_d(y) * std::sqrt(static_cast<double>(d));
}

int quad_sign(const QuadVal& v) {
  int sx = sgn(v.x);
  int sy = sgn(v.y);
  if (sy == 0) return sx;
  if (sx == 0) return sy;
  if (sx == sy) return sx;
  // x and y*sqrt(d) have opposite signs: compare x^2 with y^2*d.
  Rat x2 = v.x * v.x;
  Rat y2d = v.y * v.y * v.d;
  int c = cmp(x2, y2d);
  if (c == 0) throw std::logic_error("quad_sign: d is a perfect square");
  return c > 0 ? sx : sy;
}

static void check_same_d(const QuadVal& a, const QuadVal& b) {
  if (a.y != 0 && b.y != 0 && a.d != b.d)
    throw std::invalid_argument("mixed radicands in Q(sqrt(d)) arithmetic");
}

QuadVal quad_add(const QuadVal& a, const QuadVal& b) {
  check_same_d(a, b);
  return QuadVal(a.x + b.x, a.y + b.y, a.y != 0 ? a.d : b.d);
}

QuadVal quad_sub(const QuadVal& a, const QuadVal& b) {
  check_same_d(a, b);
  return QuadVal(a.x - b.x, a.y - b.y, a.y != 0 ? a.d : b.d);
}

QuadVal quad_add_rat(const QuadVal& a, const Rat& r) {
  return QuadVal(a.x + r, a.y, a.d);
}

QuadVal quad_sub_rat(const QuadVal& a, const Rat& r) {
  return QuadVal(a.x - r, a.y, a.d);
}

QuadVal quad_scale(const QuadVal& a, const Rat& r) {
  return QuadVal(a.x * r, a.y * r, a.d);
}

int quad_cmp(const QuadVal& a, const QuadVal& b) {
  return quad_sign(quad_sub(a, b));
}

int quad_cmp_rat(const QuadVal& a, const Rat& r) {
  return quad_sign(QuadVal(a.x - r, a.y, a.d));
}

Int quad_floor_int(const Int& A, const Int& B, const Int& d, const Int& C) {
  if (C == 0) throw std::invalid_argument("quad_floor_int: zero denominator");
  Int a = A, b = B, c = C;
  if (c < 0) {
    a = -a;
    b = -b;
    c = -c;
  }
  if (b == 0) return floor_div(a, c);
  Int b2d = b * b * d;
  if (is_perfect_square(b2d))
    throw std::invalid_argument("quad_floor_int: radicand is a square");
  Int s = isqrt(b2d);
  // b*sqrt(d) lies strictly inside (s, s+1) for b > 0, and inside
  // (-s-1, -s) for b < 0; with the numerator confined to an open unit
  // interval (I, I+1), floor((A + B sqrt d)/c) = floor(I / c).
  Int I = b > 0 ? Int(a + s) : Int(a - s - 1);
  return floor_div(I, c);
}

Int quad_floor(const QuadVal& v) {
  if (v.y == 0) return rat_floor(v.x);
  // v = (xn*yd + yn*xd*sqrt(d)) / (xd*yd)
  Int xn = v.x.get_num(), xd = v.x.get_den();
  Int yn = v.y.get_num(), yd = v.y.get_den();
  return quad_floor_int(xn * yd, yn * xd, Int(v.d), xd * yd);
}

QuadVal quad_frac(const QuadVal& v) {
  Int f = quad_floor(v);
  return QuadVal(v.x - Rat(f), v.y, v.d);
}

}  // namespace primeapprox
