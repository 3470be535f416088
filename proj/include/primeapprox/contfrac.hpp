#pragma once

// Exact real-number descriptions, continued fractions, convergents,
// badly-approximable window certification and divergence diagnostics.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "primeapprox/errors.hpp"
#include "primeapprox/quad.hpp"
#include "primeapprox/rat.hpp"

namespace primeapprox {

struct Rational {
  Rat value;
};

// (a + b*sqrt(d)) / c with d >= 2 nonsquare, b != 0, c != 0.
struct QuadraticSurd {
  Int a, b, d, c;
};

// [a0; a1, a2, ...] with an optional purely periodic tail after `head`.
struct ExplicitCf {
  std::vector<Int> head;    // head[0] = a0 >= 0; later terms >= 1
  std::vector<Int> period;  // empty = finite (rational) expansion
};

// a_1 = 3, a_{k+1} = ceil(exp(q_k)). Depth is the number of partial
// quotients after a0 = 0. Depth is capped at 3: a_4 = ceil(exp(q_3)) with
// q_3 ~ 4e29 has ~1.7e29 digits and cannot be materialized. The truncated
// tail is carried as a certified lower bound on the next quotient so exact
// bracket arithmetic stays honest.
struct LiouvilleCf {
  int depth;
};

using RealSpec = std::variant<Rational, QuadraticSurd, ExplicitCf, LiouvilleCf>;

// Grammar: rat:P/Q | sqrt:D | surd:a,b,d,c | golden | cf:a0;a1,(a2,a3) |
// liouville:depth
RealSpec parse_real_spec(const std::string& text);
std::string real_spec_str(const RealSpec& spec);

RealSpec golden();  // (1 + sqrt(5)) / 2
RealSpec sqrt_spec(long d);

// Exact value as an element of Q(sqrt(d)) when the spec is a surd (or
// rational); nullopt otherwise.
std::optional<QuadVal> as_quad(const RealSpec& spec);

struct Convergent {
  Int a, p, q;  // partial quotient and convergent p/q
};

struct ConvergentList {
  std::vector<Convergent> entries;  // index 0 holds a_0
  bool exhausted = false;           // rational CF ended before k terms
};

// First k partial quotients a_1..a_k (plus a_0) with convergents; for a
// rational spec the expansion may stop early (exhausted = true).
ConvergentList expand(const RealSpec& spec, std::size_t k);

// floor(beta * m) exactly, m >= 1.
Int floor_mul(const RealSpec& spec, const Int& m);

// sign of (beta - r), exact. Zero only for rational-valued specs.
int cmp_rat(const RealSpec& spec, const Rat& r);

struct RatInterval {
  Rat lo, hi;
};

// Closed rational bracket containing beta with hi - lo <= eps; an
// irrational beta lies strictly inside. Throws PrecisionExhausted when a
// truncated expansion cannot reach eps.
RatInterval enclose(const RealSpec& spec, const Rat& eps);

// ||q * beta|| (distance to nearest integer) as a double.
double dist_to_int(const RealSpec& spec, const Int& q);

struct IbaWindow {
  std::size_t j;  // first quotient index of the window (1-based)
  std::size_t T;  // window covers quotients a_j .. a_{j+T}
};

struct IbaCertificate {
  Int B;
  Rat delta;
  std::vector<IbaWindow> windows;
};

// All maximal quotient windows [j, j+T] with a <= B and T >= delta*ln(q_j)
// among indices <= kmax. Natural log; the comparison is decided with
// directed rounding, never floating guesswork.
IbaCertificate iba_certify(const RealSpec& spec, const Int& B,
                           const Rat& delta, std::size_t kmax);

// Partial sum over k with q_{k+1} <= K of
// sum_{q_k <= n < q_{k+1}} min(psi(n), ||q_k beta||), psi(1)=1,
// psi(n) = 1/(n ln n).
double fuchs_kim_partial(const RealSpec& spec, std::uint64_t K);

struct DvStat {
  Int sum_minus_max;            // sum_{l<=K} a_l - max_{l<=K} a_l
  double reference;             // K log K / log 2
  double kappa_lower_estimate;  // max_k log q_{k+1} / log q_k (finite-K)
  std::size_t terms_used;
};

DvStat dv_statistic(const RealSpec& spec, std::size_t K);

// True when every partial quotient governing denominators in [2^U, 2^V]
// is <= B (the "B-badly approximable range" precondition).
bool badly_range(const RealSpec& spec, int U, int V, const Int& B);

}  // namespace primeapprox
