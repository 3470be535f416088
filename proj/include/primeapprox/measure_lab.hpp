#pragma once

// Exact measures of arc unions: overlap integrals, sifted sets,
// sieve-on-average, truncated-counterexample blocks, dyadic blocks.

#include <cstdint>
#include <vector>

#include "primeapprox/contfrac.hpp"
#include "primeapprox/interval_set.hpp"
#include "primeapprox/prime_engine.hpp"
#include "primeapprox/sequence_gen.hpp"

namespace primeapprox {

// Normalize + exact measure.
Rat union_measure(IntervalSet& s);

// Exact integral over [0,1) of 1[||p*alpha|| <= c/p] * 1[||q*alpha|| <= c/q]
// (the intersection measure of the two periodic arc families).
// Requires p < q prime, 0 < c < 1/2.
Rat overlap_integral(std::uint64_t p, std::uint64_t q, const Rat& c);

// Arcs I_p = [a_p/p - c/p, a_p/p + c/p] for X < p <= Y from a sequence.
IntervalSet range_arcs(const NumeratorSequence& seq, std::uint64_t X,
                       std::uint64_t Y, const Rat& c);

// lambda(A_{X,Y}) = 1 - lambda(union of I_p, X < p <= Y). When a table is
// supplied, every prime in (X, Y] must have an entry (MissingEntry).
Rat sifted_measure(const NumeratorSequence& seq, std::uint64_t X,
                   std::uint64_t Y, const Rat& c,
                   const PrimeTable* table = nullptr);

struct SieveAvgReport {
  std::uint64_t X = 0;
  Rat c;
  unsigned trials = 0;
  std::uint64_t seed = 0;
  struct PerY {
    std::uint64_t Y;
    Rat mean;             // exact mean of lambda(A_{X,Y}) over trials
    double mean_d;
    double variance;      // sample variance (double; diagnostic)
    Rat H;                // exact H_{X,Y}
    double product;       // mean * H
  };
  std::vector<PerY> per_y;
  bool mean_decreasing = false;       // in Y
  bool product_stable_factor2 = false;  // max/min of products <= 2
};

SieveAvgReport sieve_average_experiment(const PrimeTable& table,
                                        std::uint64_t X,
                                        std::vector<std::uint64_t> ys,
                                        const Rat& c, unsigned trials,
                                        std::uint64_t seed,
                                        unsigned threads = 1);

struct CounterexampleReport {
  int k = 0;
  Rat c;
  Int q_k, q_k1;        // q_k1 = 0 when beyond the computable depth
  bool truncated = false;  // block cut at the sieve limit
  std::uint64_t p_lo = 0, p_hi = 0;  // primes actually covered
  Rat measure;          // certified upper enclosure of the block measure
  double reference = 0; // log log q_k / log q_k
  double fitted_C = 0;  // measure / reference
};

// lambda(union over q_k <= p < q_{k+1} of [{p beta} +- c/p]) for a
// Liouville-type beta; blocks reaching past the sieve limit are truncated
// and flagged (see decisions ledger).
CounterexampleReport counterexample_block_measure(const PrimeTable& table,
                                                  const RealSpec& beta, int k,
                                                  const Rat& c);

struct DyadicBlockReport {
  int U = 0, V = 0;
  Rat c;
  Int B;
  struct Block {
    int i;
    std::size_t arc_count;
    bool disjoint;       // A_{p,i} pairwise interior-disjoint
    bool sum_identity;   // lambda(E_i) == sum of arc lengths exactly
    QuadVal measure;
    double measure_d;
  };
  std::vector<Block> blocks;
  double total = 0;        // sum_i lambda(E_i)
  double pair_total = 0;   // sum_{i<=j} lambda(E_i cap E_j)
  double qi_ratio = 0;     // pair_total / total^2
};

// E_i = union over 2^i <= p < 2^{i+1} of A_{p,i} = [{p beta} +- c/2^{i+1}],
// U <= i <= V; beta must be a quadratic surd so endpoints stay exact.
DyadicBlockReport dyadic_block_overlap(const PrimeTable& table,
                                       const RealSpec& beta, const Int& B,
                                       const Rat& c, int U, int V);

}  // namespace primeapprox
