#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "primeapprox/trace_avg.hpp"

using namespace primeapprox;

namespace {
const PrimeTable& table() {
  static PrimeTable t(200000);
  return t;
}
}  // namespace

TEST_CASE("closed form matches direct summation") {
  for (std::uint64_t p : {2, 3, 5, 13, 101, 1009}) {
    for (std::uint64_t a : {std::uint64_t(0), std::uint64_t(1), p - 1}) {
      if (a >= p) continue;
      for (double x : {0.0, 0.3, 0.77}) {
        for (double y : {0.0, 0.1, 0.5, 0.7, 0.999}) {
          std::complex<double> d = s_direct(p, a, x, y);
          std::complex<double> c = s_closed(p, a, x, y);
          CHECK(std::abs(d - c) < 1e-9);
        }
      }
    }
  }
}

TEST_CASE("resonance: theta integer gives |s| = 1 exactly") {
  // y = a/p makes theta = 0
  std::complex<double> s = s_closed(13, 4, 0.3, 4.0 / 13.0);
  CHECK(std::abs(s) == doctest::Approx(1.0).epsilon(1e-12));
  // the limit branch carries the phase e(x)
  std::complex<double> sx = s_closed(13, 4, 0.25, 4.0 / 13.0);
  CHECK(std::fabs(sx.real()) < 1e-9);
  CHECK(sx.imag() == doctest::Approx(1.0).epsilon(1e-9));
  // theta = 1 (integer, nonzero) behaves the same
  std::complex<double> s1 = s_closed(7, 0, 0.0, 1.0);
  CHECK(std::abs(s1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("kernel bound |s_p| <= min(1, 1/(2 p ||theta||))") {
  for (std::uint64_t p : {5, 13, 101, 1009}) {
    for (std::uint64_t a : {std::uint64_t(1), std::uint64_t(2)}) {
      for (double y = 0.05; y < 1.0; y += 0.09) {
        double theta = y - double(a) / double(p);
        theta -= std::floor(theta);
        double dist = std::min(theta, 1.0 - theta);
        double bound = std::min(1.0, 1.0 / (2.0 * p * dist));
        CHECK(std::abs(s_closed(p, a, 0.0, y)) <= bound + 1e-12);
      }
    }
  }
}

TEST_CASE("|s_p| does not depend on x") {
  double a1 = std::abs(s_closed(101, 7, 0.0, 0.3));
  double a2 = std::abs(s_closed(101, 7, 0.9, 0.3));
  CHECK(a1 == doctest::Approx(a2).epsilon(1e-13));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((void)s_direct(7, 7, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)s_closed(7, 9, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)s_direct(200000, 0, 0.0, 0.0), std::out_of_range);
  CHECK_THROWS_AS((void)s_direct(0, 0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("divergence scan basics") {
  NumeratorSequence seq = rotation_sequence(table(), sqrt_spec(2), 20000);
  ScanReport rep = divergence_scan(seq, 0.37, 20000, 0.5);
  // kappa solves |sinc(kappa)| = 1/2 on (0, 1): kappa ~ 0.6034
  CHECK(rep.kappa == doctest::Approx(0.60335).epsilon(1e-3));
  CHECK(std::sin(M_PI * rep.kappa) / (M_PI * rep.kappa) ==
        doctest::Approx(0.5).epsilon(1e-9));
  // every reported prime really clears the threshold (recompute)
  for (const auto& row : rep.rows) {
    CHECK(row.abs_s >= 0.5);
    std::uint64_t a = seq.require(row.p);
    CHECK(std::abs(s_closed(row.p, a, 0.0, 0.37)) ==
          doctest::Approx(row.abs_s).epsilon(1e-12));
    CHECK(row.theta <= 0.5);
  }
  CHECK(rep.rows.size() == rep.primes.size());
  // p ||theta|| <= kappa forces |s_p| >= |sinc(p theta)| >= threshold,
  // so kernel primes are a subset of the threshold primes
  for (std::uint64_t p : rep.kernel_primes)
    CHECK(std::binary_search(rep.primes.begin(), rep.primes.end(), p));
}

TEST_CASE("scan thresholds are monotone") {
  NumeratorSequence seq = random_sequence(table(), 50000, 21);
  ScanReport lo = divergence_scan(seq, 0.61, 50000, 0.3);
  ScanReport hi = divergence_scan(seq, 0.61, 50000, 0.7);
  CHECK(hi.primes.size() <= lo.primes.size());
  // a higher threshold's primes are a subset of a lower one's
  for (std::uint64_t p : hi.primes)
    CHECK(std::binary_search(lo.primes.begin(), lo.primes.end(), p));
  CHECK(hi.kappa < lo.kappa);
  CHECK_THROWS_AS((void)divergence_scan(seq, 0.5, 50000, 1.5),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)divergence_scan(seq, 0.5, 60000, 0.5),
                  std::invalid_argument);
}
