#pragma once

// Exact arithmetic in Q(sqrt(d)): values x + y*sqrt(d) with rational x, y
// and a fixed nonsquare d >= 2. Used wherever arc endpoints are quadratic
// irrationals ({p*beta} for surd beta).

#include "primeapprox/rat.hpp"

namespace primeapprox {

struct QuadVal {
  Rat x;    // rational part
  Rat y;    // coefficient of sqrt(d)
  long d;   // nonsquare radicand; ignored when y == 0

  QuadVal() : x(0), y(0), d(2) {}
  QuadVal(Rat x, Rat y, long d) : x(std::move(x)), y(std::move(y)), d(d) {}
  static QuadVal rational(const Rat& r) { return QuadVal(r, Rat(0), 2); }

  bool is_rational() const { return y == 0; }
  double to_double() const;
};

// sign of v (exact): -1, 0, +1.
int quad_sign(const QuadVal& v);

QuadVal quad_add(const QuadVal& a, const QuadVal& b);
QuadVal quad_sub(const QuadVal& a, const QuadVal& b);
QuadVal quad_add_rat(const QuadVal& a, const Rat& r);
QuadVal quad_sub_rat(const QuadVal& a, const Rat& r);
QuadVal quad_scale(const QuadVal& a, const Rat& r);

// exact comparison: sign of (a - b). Both must share d unless one is
// rational.
int quad_cmp(const QuadVal& a, const QuadVal& b);
int quad_cmp_rat(const QuadVal& a, const Rat& r);

// floor((A + B*sqrt(d)) / C) exactly; d nonsquare (or B == 0), C != 0.
Int quad_floor_int(const Int& A, const Int& B, const Int& d, const Int& C);

Int quad_floor(const QuadVal& v);

// v - floor(v), in [0, 1).
QuadVal quad_frac(const QuadVal& v);

inline QuadVal operator+(const QuadVal& a, const QuadVal& b) {
  return quad_add(a, b);
}
inline QuadVal operator-(const QuadVal& a, const QuadVal& b) {
  return quad_sub(a, b);
}

}  // namespace primeapprox
