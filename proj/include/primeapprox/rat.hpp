#pragma once

// Exact integer/rational helpers shared by every module.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace primeapprox {

using Int = mpz_class;
using Rat = mpq_class;

// floor(a / b) for any sign of a, b != 0.
inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// floor(sqrt(n)), n >= 0.
inline Int isqrt(const Int& n) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline bool is_perfect_square(const Int& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Int rat_floor(const Rat& r) {
  return floor_div(r.get_num(), r.get_den());
}

inline bool rat_is_integer(const Rat& r) { return r.get_den() == 1; }

// "P/Q" or "P"; throws std::invalid_argument on malformed input.
Rat parse_rat(const std::string& s);

// Canonical "P/Q" (or "P" when the denominator is 1).
std::string rat_str(const Rat& r);

inline double rat_d(const Rat& r) { return r.get_d(); }

// Balanced (pairwise) sum: keeps intermediate operand sizes small when
// adding many rationals with coprime denominators (e.g. sums of 1/p).
Rat tree_sum(std::vector<Rat> terms);

}  // namespace primeapprox
