#include "primeapprox/prime_engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace primeapprox {

namespace {

// phi(h) by trial division; h is small (shifted-prime shifts).
std::uint64_t phi_small(std::uint64_t h) {
  std::uint64_t result = h;
  for (std::uint64_t p = 2; p * p <= h; ++p) {
    if (h % p == 0) {
      result -= result / p;
      while (h % p == 0) h /= p;
    }
  }
  if (h > 1) result -= result / h;
  return result;
}

}  // namespace

PrimeTable::PrimeTable(std::uint64_t limit) : limit_(limit) {
  if (limit < 2) throw std::invalid_argument("sieve limit must be >= 2");

  // Segmented sieve of Eratosthenes over odd numbers.
  constexpr std::uint64_t kSegment = 1u << 18;
  std::uint64_t root = static_cast<std::uint64_t>(std::sqrt((double)limit));
  while (root * root > limit) --root;
  while ((root + 1) * (root + 1) <= limit) ++root;

  std::vector<char> small(root + 1, 1);
  std::vector<std::uint64_t> base;  // odd primes <= sqrt(limit)
  for (std::uint64_t i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    if (i > 2) base.push_back(i);
    for (std::uint64_t j = i * i; j <= root; j += i) small[j] = 0;
  }

  primes_.reserve(limit > 16 ? static_cast<std::size_t>(
                                   1.2 * limit / std::log((double)limit))
                             : 8);
  primes_.push_back(2);

  std::vector<char> sieve(kSegment);
  for (std::uint64_t low = 3; low <= limit; low += 2 * kSegment) {
    std::uint64_t high = std::min(low + 2 * kSegment - 1, limit);
    std::size_t len = static_cast<std::size_t>((high - low) / 2 + 1);
    std::fill(sieve.begin(), sieve.begin() + len, 1);
    for (std::uint64_t p : base) {
      if (p * p > high) break;
      std::uint64_t start = std::max(p * p, ((low + p - 1) / p) * p);
      if (start % 2 == 0) start += p;
      for (std::uint64_t j = start; j <= high; j += 2 * p)
        sieve[static_cast<std::size_t>((j - low) / 2)] = 0;
    }
    for (std::size_t k = 0; k < len; ++k)
      if (sieve[k]) primes_.push_back(low + 2 * k);
  }
}

std::uint64_t PrimeTable::index_of(std::uint64_t p) const {
  auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
  if (it == primes_.end() || *it != p) return 0;
  return static_cast<std::uint64_t>(it - primes_.begin()) + 1;
}

bool PrimeTable::is_prime(std::uint64_t n) const {
  if (n > limit_) throw std::out_of_range("is_prime beyond sieve limit");
  return index_of(n) != 0;
}

std::uint64_t PrimeTable::pi(std::uint64_t x) const {
  if (x > limit_) throw std::out_of_range("pi beyond sieve limit");
  auto it = std::upper_bound(primes_.begin(), primes_.end(), x);
  return static_cast<std::uint64_t>(it - primes_.begin());
}

std::uint64_t PrimeTable::next_prime(std::uint64_t n) const {
  auto it = std::upper_bound(primes_.begin(), primes_.end(), n);
  if (it == primes_.end())
    throw std::out_of_range("next_prime beyond sieve limit");
  return *it;
}

Rat PrimeTable::mertens_sum(std::uint64_t X, std::uint64_t Y) const {
  if (X < 1 || X >= Y) throw std::invalid_argument("need 1 <= X < Y");
  if (Y > limit_) throw std::out_of_range("mertens_sum beyond sieve limit");
  auto lo = std::upper_bound(primes_.begin(), primes_.end(), X);
  auto hi = std::upper_bound(primes_.begin(), primes_.end(), Y);
  std::vector<Rat> terms;
  terms.reserve(static_cast<std::size_t>(hi - lo));
  for (auto it = lo; it != hi; ++it)
    terms.push_back(Rat(1, static_cast<unsigned long>(*it)));
  return tree_sum(std::move(terms));
}

std::uint64_t PrimeTable::shifted_prime_count(std::uint64_t x,
                                              std::uint64_t h) const {
  if (x < 2) throw std::invalid_argument("shifted_prime_count needs x >= 2");
  if (h < 1 || h > x * x)
    throw std::invalid_argument("shift h outside [1, x^2]");
  if (x > limit_ || x + h > limit_)
    throw std::out_of_range("shifted_prime_count lookups beyond sieve limit");
  std::uint64_t count = 0;
  for (std::uint64_t p : primes_) {
    if (p > x) break;
    if (index_of(p + h) != 0) ++count;
  }
  return count;
}

double PrimeTable::shifted_prime_reference(std::uint64_t x,
                                           std::uint64_t h) const {
  double lx = std::log(static_cast<double>(x));
  return (static_cast<double>(h) / static_cast<double>(phi_small(h))) *
         static_cast<double>(x) / (lx * lx);
}

PrimeTable build_table(std::uint64_t limit) { return PrimeTable(limit); }

}  // namespace primeapprox
