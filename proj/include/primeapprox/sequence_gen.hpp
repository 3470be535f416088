#pragma once

// Numerator-sequence generators: random, greedy covering, rotation and
// prime-rotation, plus the line-based serialization format.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "primeapprox/contfrac.hpp"
#include "primeapprox/prime_engine.hpp"

namespace primeapprox {

struct Provenance {
  std::string generator;
  std::map<std::string, std::string> params;
};

struct NumeratorSequence {
  std::uint64_t limit = 0;
  // (p, a_p) sorted by p; domain = primes <= limit, except for greedy
  // sequences where it is exactly the primes the algorithm visited.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> entries;
  Provenance provenance;
  // greedy only: (first_prime, last_prime) per covering iteration.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> iterations;

  std::optional<std::uint64_t> at(std::uint64_t p) const;
  // a_p or MissingEntry.
  std::uint64_t require(std::uint64_t p) const;
};

NumeratorSequence random_sequence(const PrimeTable& table, std::uint64_t limit,
                                  std::uint64_t seed);

// Algorithm: q <- p0-1; x <- 0; while x < 1 { q <- nextprime(q);
// a_q <- floor(q*x); x <- a_q/q + 2/q }. x stays an exact rational.
std::vector<std::pair<std::uint64_t, std::uint64_t>> greedy_cover_once(
    const PrimeTable& table, std::uint64_t p0);

NumeratorSequence greedy_sequence(const PrimeTable& table, unsigned iterations);

// a_p = floor(p * n_p * beta) mod p.
NumeratorSequence rotation_sequence(const PrimeTable& table,
                                    const RealSpec& beta, std::uint64_t limit);

// b_p = floor(p^2 * beta) mod p.
NumeratorSequence prime_rotation_sequence(const PrimeTable& table,
                                          const RealSpec& beta,
                                          std::uint64_t limit);

// `# primeapprox-sequence {json}` header, then `p<TAB>a_p` lines.
void write_sequence(std::ostream& os, const NumeratorSequence& seq);
NumeratorSequence read_sequence(std::istream& is);

}  // namespace primeapprox
