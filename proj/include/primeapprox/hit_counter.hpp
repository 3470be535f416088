#pragma once

// Hit counts N_X(alpha, a) = |{p <= X : |alpha - a_p/p| <= c/p}| (circle
// distance, non-strict), the exact expectation Psi(X) = 2c sum_{p<=X} 1/p,
// and Monte-Carlo / growth-table experiments.

#include <cstdint>
#include <vector>

#include "primeapprox/contfrac.hpp"
#include "primeapprox/prime_engine.hpp"
#include "primeapprox/sequence_gen.hpp"

namespace primeapprox {

// Exact count; alpha may be rational or any RealSpec (resolved by exact
// refinement). Requires X <= seq.limit, 0 < c <= 1/2.
std::uint64_t count_hits(const RealSpec& alpha, const NumeratorSequence& seq,
                         std::uint64_t X, const Rat& c);

std::uint64_t count_hits(const Rat& alpha, const NumeratorSequence& seq,
                         std::uint64_t X, const Rat& c);

// Psi(X) = 2c * sum_{p <= X} 1/p, exact.
Rat psi(const PrimeTable& table, std::uint64_t X, const Rat& c);

struct McHitsReport {
  std::uint64_t X = 0;
  Rat c;
  unsigned samples = 0;
  std::uint64_t seed = 0;
  double mean = 0;
  double variance = 0;
  double se = 0;       // standard error of the mean
  Rat psi_exact;
  double z = 0;        // (mean - Psi) / SE
};

// alpha sampled as k/2^64 from per-sample PRNG streams; deterministic in
// (seed, samples) and independent of thread count.
McHitsReport mc_mean_hits(const NumeratorSequence& seq, const PrimeTable& table,
                          std::uint64_t X, const Rat& c, unsigned samples,
                          std::uint64_t seed, unsigned threads = 1);

struct HitReport {
  std::string alpha;
  Rat c;
  struct Row {
    std::uint64_t X;
    std::uint64_t count;
    Rat psi;
    double ratio;  // count / (2c log log X); display-only double
  };
  std::vector<Row> rows;
};

HitReport growth_table(const RealSpec& alpha, const NumeratorSequence& seq,
                       const PrimeTable& table, const Rat& c,
                       const std::vector<std::uint64_t>& checkpoints);

}  // namespace primeapprox
