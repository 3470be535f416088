#pragma once

// Segmented sieve, prime/rank conversion, Mertens partial sums and
// shifted-prime counts.

#include <cstdint>
#include <vector>

#include "primeapprox/rat.hpp"

namespace primeapprox {

class PrimeTable {
 public:
  // All primes <= limit via a segmented sieve (odd-only segments of 2^18
  // entries); limit >= 2 required.
  explicit PrimeTable(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }
  const std::vector<std::uint64_t>& primes() const { return primes_; }

  // 1-based rank n_p (2 is the 1st prime); 0 if p is not a listed prime.
  std::uint64_t index_of(std::uint64_t p) const;

  bool is_prime(std::uint64_t n) const;

  // Number of primes <= x (x <= limit).
  std::uint64_t pi(std::uint64_t x) const;

  // Smallest listed prime > n; throws std::out_of_range past the table.
  std::uint64_t next_prime(std::uint64_t n) const;

  // Exact sum_{X < p <= Y} 1/p. Requires 1 <= X < Y <= limit.
  Rat mertens_sum(std::uint64_t X, std::uint64_t Y) const;

  // |{p <= x : p + h prime}| by table lookup; requires 2 <= x,
  // 1 <= h <= x^2 and x + h <= limit so all lookups stay in range.
  std::uint64_t shifted_prime_count(std::uint64_t x, std::uint64_t h) const;

  // Companion bound value (h/phi(h)) * x / (log x)^2 for
  // shifted_prime_count, reported for empirical bound fitting.
  double shifted_prime_reference(std::uint64_t x, std::uint64_t h) const;

 private:
  std::uint64_t limit_;
  std::vector<std::uint64_t> primes_;
};

PrimeTable build_table(std::uint64_t limit);

// Default sieve cap; overridable via PRIMEAPPROX_SIEVE_LIMIT (used by CLI).
inline constexpr std::uint64_t kDefaultSieveLimit = 6000000;

}  // namespace primeapprox
