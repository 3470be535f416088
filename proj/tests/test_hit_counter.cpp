#include <doctest.h>

#include <cmath>

#include "primeapprox/hit_counter.hpp"

using namespace primeapprox;

namespace {
const PrimeTable& table() {
  static PrimeTable t(200000);
  return t;
}

// Oracle for rational alpha: circle distance |alpha - a/p| computed with
// exact rationals directly.
std::uint64_t slow_hits(const Rat& alpha, const NumeratorSequence& seq,
                        std::uint64_t X, const Rat& c) {
  std::uint64_t n = 0;
  for (auto [p, a] : seq.entries) {
    if (p > X) break;
    Rat d = alpha - Rat(static_cast<unsigned long>(a),
                        static_cast<unsigned long>(p));
    d -= Rat(rat_floor(d));
    Rat dist = std::min(d, Rat(Rat(1) - d));
    if (dist <= c / static_cast<unsigned long>(p)) ++n;
  }
  return n;
}
}  // namespace

TEST_CASE("hand trace on the greedy sequence at alpha = 0") {
  PrimeTable t(100);
  NumeratorSequence seq = greedy_sequence(t, 3);
  // c = 1/2: p=2 (a=0, dist 0), p=3 (a=0, dist 0), p=7 (a=0, dist 0) hit;
  // p=5 has a=3, dist 2/5 > 1/10
  CHECK(count_hits(Rat(0), seq, 10, Rat(1, 2)) == 3);
  CHECK(count_hits(parse_real_spec("rat:0/1"), seq, 10, Rat(1, 2)) == 3);
}

TEST_CASE("rational alpha matches the direct oracle") {
  NumeratorSequence seq = rotation_sequence(table(), sqrt_spec(2), 2000);
  for (const Rat& alpha :
       {Rat(0), Rat(1, 3), Rat(Rat(355, 113) - 3), Rat(99, 100)}) {
    for (const Rat& c : {Rat(1, 2), Rat(1, 4), Rat(1, 100)}) {
      CHECK(count_hits(alpha, seq, 2000, c) == slow_hits(alpha, seq, 2000, c));
    }
  }
}

TEST_CASE("irrational alpha matches a tight rational proxy") {
  NumeratorSequence seq = random_sequence(table(), 5000, 11);
  RealSpec alpha = sqrt_spec(2);
  // proxy: floor(2^120 * sqrt 2) / 2^120; no arc endpoint of the family
  // lands within 2^-100 of sqrt(2)-1, so counts agree
  Int scale = Int(1) << 120;
  Rat proxy = make_rat(floor_mul(alpha, scale), scale);
  for (Rat c : {Rat(1, 2), Rat(1, 7)}) {
    CHECK(count_hits(alpha, seq, 5000, c) == count_hits(proxy, seq, 5000, c));
  }
}

TEST_CASE("boundary hits are non-strict") {
  // alpha = a/p + c/p exactly must count
  NumeratorSequence seq;
  seq.limit = 7;
  seq.entries = {{5, 1}};
  Rat c(1, 4);
  Rat alpha = Rat(1, 5) + c / 5;
  CHECK(count_hits(alpha, seq, 7, c) == 1);
  // just beyond the boundary must not
  CHECK(count_hits(Rat(alpha + Rat(1, 1000000)), seq, 7, c) == 0);
  // wrap-around: alpha near 1 hits a_p = 0
  NumeratorSequence wrap;
  wrap.limit = 3;
  wrap.entries = {{2, 0}};
  CHECK(count_hits(Rat(9, 10), wrap, 3, Rat(1, 4)) == 1);
}

TEST_CASE("parameter validation") {
  NumeratorSequence seq = random_sequence(table(), 100, 1);
  CHECK_THROWS_AS((void)count_hits(Rat(0), seq, 200, Rat(1, 4)),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)count_hits(Rat(0), seq, 100, Rat(0)),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)count_hits(Rat(0), seq, 100, Rat(2, 3)),
                  std::invalid_argument);
}

TEST_CASE("psi is the exact truncated prime harmonic sum") {
  CHECK(psi(table(), 10, Rat(1, 2)) == Rat(247, 210));
  CHECK(psi(table(), 10, Rat(1, 4)) == Rat(247, 420));
  CHECK(psi(table(), 100, Rat(1, 2)) ==
        psi(table(), 10, Rat(1, 2)) + table().mertens_sum(10, 100));
}

TEST_CASE("monte-carlo mean is thread-independent and near psi") {
  NumeratorSequence seq = random_sequence(table(), 10000, 5);
  McHitsReport r1 = mc_mean_hits(seq, table(), 10000, Rat(1, 4), 400, 17, 1);
  McHitsReport r4 = mc_mean_hits(seq, table(), 10000, Rat(1, 4), 400, 17, 4);
  CHECK(r1.mean == r4.mean);
  CHECK(r1.variance == r4.variance);
  CHECK(r1.psi_exact == psi(table(), 10000, Rat(1, 4)));
  // mean within 5 standard errors of the exact expectation
  CHECK(std::fabs(r1.z) < 5.0);
}

TEST_CASE("growth table rows") {
  NumeratorSequence seq = random_sequence(table(), 100000, 3);
  HitReport rep = growth_table(sqrt_spec(2), seq, table(), Rat(1, 4),
                               {100, 1000, 100000});
  REQUIRE(rep.rows.size() == 3);
  for (const auto& row : rep.rows) {
    CHECK(row.count ==
          count_hits(sqrt_spec(2), seq, row.X, Rat(1, 4)));
    CHECK(row.psi == psi(table(), row.X, Rat(1, 4)));
    double denom = 0.5 * std::log(std::log(double(row.X)));
    CHECK(row.ratio == doctest::Approx(row.count / denom));
  }
}
