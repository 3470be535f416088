#pragma once

// Ergodic averages s_p(x, y) = (1/p) sum_{0<=n<p} e(-n a_p/p) e(x + n y)
// on the 2-torus: direct sum, Dirichlet-kernel closed form, and
// divergence scans over a numerator sequence.

#include <complex>
#include <cstdint>
#include <vector>

#include "primeapprox/sequence_gen.hpp"

namespace primeapprox {

// Direct summation; p <= 1e5 (cap), 0 <= a < p. Error is O(p * ulp) from
// long-double phase accumulation.
std::complex<double> s_direct(std::uint64_t p, std::uint64_t a, double x,
                              double y);

// Closed form e(x) * sin(pi p theta)/(p sin(pi theta)) * e((p-1) theta/2)
// with theta = y - a/p; within 2^-40 of an integer theta the limit value
// s = e(x) is used (the kernel ratio tends to +1 after sign bookkeeping).
std::complex<double> s_closed(std::uint64_t p, std::uint64_t a, double x,
                              double y);

struct ScanReport {
  double y = 0;
  double threshold = 0;
  double kappa = 0;  // kernel-profile inverse: |sinc(kappa)| = threshold
  std::vector<std::uint64_t> primes;         // |s_p| >= threshold
  std::vector<std::uint64_t> kernel_primes;  // p * ||y - a_p/p|| <= kappa
  struct Row {
    std::uint64_t p;
    double theta;  // ||y - a_p/p||
    double abs_s;
  };
  std::vector<Row> rows;  // the primes list with diagnostics (CSV export)
};

// |s_p| is x-independent, so the scan fixes x = 0.
ScanReport divergence_scan(const NumeratorSequence& seq, double y,
                           std::uint64_t X, double threshold);

}  // namespace primeapprox
