#include <doctest.h>

#include "primeapprox/prime_engine.hpp"

using namespace primeapprox;

namespace {
const PrimeTable& table() {
  static PrimeTable t(1100000);
  return t;
}
}  // namespace

TEST_CASE("sieve matches known prime counts") {
  const PrimeTable& t = table();
  CHECK(t.pi(10) == 4);
  CHECK(t.pi(100) == 25);
  CHECK(t.pi(1000) == 168);
  CHECK(t.pi(1000000) == 78498);
  CHECK(t.primes().front() == 2);
  CHECK(t.is_prime(2));
  CHECK(t.is_prime(999983));
  CHECK(!t.is_prime(1));
  CHECK(!t.is_prime(999981));
}

TEST_CASE("trial-division cross-check on a window") {
  const PrimeTable& t = table();
  auto slow_prime = [](std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  };
  for (std::uint64_t n = 104000; n < 104400; ++n)
    CHECK(t.is_prime(n) == slow_prime(n));
}

TEST_CASE("index_of and next_prime") {
  const PrimeTable& t = table();
  CHECK(t.index_of(2) == 1);
  CHECK(t.index_of(3) == 2);
  CHECK(t.index_of(29) == 10);
  CHECK(t.index_of(4) == 0);
  CHECK(t.next_prime(2) == 3);
  CHECK(t.next_prime(14) == 17);
  CHECK_THROWS_AS((void)t.next_prime(1099999), std::out_of_range);
}

TEST_CASE("mertens_sum exact values and additivity") {
  const PrimeTable& t = table();
  // 1/2 + 1/3 + 1/5 + 1/7 = 247/210
  CHECK(t.mertens_sum(1, 10) == Rat(247, 210));
  CHECK(t.mertens_sum(1, 2) == Rat(1, 2));
  CHECK(t.mertens_sum(1, 100) ==
        t.mertens_sum(1, 10) + t.mertens_sum(10, 100));
  // naive oracle over a range
  Rat naive(0);
  for (std::uint64_t p : t.primes()) {
    if (p <= 50) continue;
    if (p > 500) break;
    naive += Rat(1, static_cast<unsigned long>(p));
  }
  CHECK(t.mertens_sum(50, 500) == naive);
  CHECK_THROWS_AS((void)t.mertens_sum(10, 10), std::invalid_argument);
}

TEST_CASE("shifted prime counts") {
  const PrimeTable& t = table();
  CHECK(t.shifted_prime_count(20, 2) == 4);  // 3,5,11,17
  CHECK(t.shifted_prime_count(10, 1) == 1);  // only p=2
  CHECK(t.shifted_prime_reference(100, 2) > 0);
  // monotone in x
  CHECK(t.shifted_prime_count(200, 2) >= t.shifted_prime_count(100, 2));
  CHECK_THROWS_AS((void)t.shifted_prime_count(1, 1), std::invalid_argument);
}
