#include "primeapprox/trace_avg.hpp"

#include <cmath>
#include <stdexcept>

namespace primeapprox {

namespace {

constexpr long double kPi = 3.14159265358979323846264338327950288L;
constexpr double kLimitBranch = 9.094947017729282e-13;  // 2^-40

std::complex<double> e_unit(long double t) {
  // e(t) = exp(2 pi i t), t reduced mod 1 first
  long double r = t - std::floor(t);
  return {static_cast<double>(std::cos(2 * kPi * r)),
          static_cast<double>(std::sin(2 * kPi * r))};
}

void check_pa(std::uint64_t p, std::uint64_t a) {
  if (p < 2) throw std::invalid_argument("trace average: p >= 2 required");
  if (a >= p) throw std::invalid_argument("trace average: need 0 <= a < p");
}

// |sin(pi p theta) / (p sin(pi theta))| with the 2^-40 limit branch.
double kernel_abs(std::uint64_t p, long double theta) {
  long double t = theta - std::floor(theta + 0.5L);  // in [-1/2, 1/2]
  if (std::fabs(t) < kLimitBranch) return 1.0;
  // sin(pi p theta)/sin(pi theta) = sin(pi p t)/sin(pi t) up to a sign
  // that cancels against e((p-1) theta/2); only the modulus is needed.
  long double num = std::sin(kPi * std::remainder(static_cast<long double>(p) * t, 2.0L));
  long double den = static_cast<long double>(p) * std::sin(kPi * t);
  return static_cast<double>(std::fabs(num / den));
}

}  // namespace

std::complex<double> s_direct(std::uint64_t p, std::uint64_t a, double x,
                              double y) {
  check_pa(p, a);
  if (p > 100000) throw std::out_of_range("s_direct: p > 1e5 cap");
  long double step = static_cast<long double>(y) -
                     static_cast<long double>(a) / static_cast<long double>(p);
  std::complex<long double> sum(0, 0);
  for (std::uint64_t n = 0; n < p; ++n) {
    long double phase = static_cast<long double>(x) +
                        static_cast<long double>(n) * step;
    phase -= std::floor(phase);
    sum += std::complex<long double>(std::cos(2 * kPi * phase),
                                     std::sin(2 * kPi * phase));
  }
  sum /= static_cast<long double>(p);
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

std::complex<double> s_closed(std::uint64_t p, std::uint64_t a, double x,
                              double y) {
  check_pa(p, a);
  long double theta = static_cast<long double>(y) -
                      static_cast<long double>(a) / static_cast<long double>(p);
  long double t = theta - std::floor(theta + 0.5L);  // nearest-int reduction
  if (std::fabs(t) < kLimitBranch) return e_unit(x);
  // With t the reduced theta the integer-shift signs cancel exactly:
  // s = e(x) * sin(pi p t)/(p sin(pi t)) * e((p-1) t / 2).
  long double ratio =
      std::sin(kPi * std::remainder(static_cast<long double>(p) * t, 2.0L)) /
      (static_cast<long double>(p) * std::sin(kPi * t));
  std::complex<double> phase =
      e_unit(static_cast<long double>(p - 1) * t / 2.0L);
  std::complex<double> ex = e_unit(x);
  return ex * phase * static_cast<double>(ratio);
}

ScanReport divergence_scan(const NumeratorSequence& seq, double y,
                           std::uint64_t X, double threshold) {
  if (X > seq.limit)
    throw std::invalid_argument("divergence_scan: X > seq.limit");
  if (!(threshold > 0 && threshold < 1))
    throw std::invalid_argument("divergence_scan: threshold in (0,1)");
  ScanReport rep;
  rep.y = y;
  rep.threshold = threshold;

  // kappa: |sin(pi u)/(pi u)| = threshold, u in (0, 1); sinc decreases
  // there, so bisection applies.
  {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
      double mid = (lo + hi) / 2;
      double v = mid == 0 ? 1.0 : std::sin(kPi * mid) / (kPi * mid);
      (v >= threshold ? lo : hi) = mid;
    }
    rep.kappa = (lo + hi) / 2;
  }

  for (const auto& [p, a] : seq.entries) {
    if (p > X) break;
    long double theta = static_cast<long double>(y) -
                        static_cast<long double>(a) /
                            static_cast<long double>(p);
    long double t = theta - std::floor(theta + 0.5L);
    double abs_s = kernel_abs(p, theta);
    if (abs_s >= threshold) {
      rep.primes.push_back(p);
      rep.rows.push_back({p, static_cast<double>(std::fabs(t)), abs_s});
    }
    if (static_cast<double>(p) * static_cast<double>(std::fabs(t)) <=
        rep.kappa)
      rep.kernel_primes.push_back(p);
  }
  return rep;
}

}  // namespace primeapprox
