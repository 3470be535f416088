#include <doctest.h>

#include <cmath>
#include <sstream>

#include "primeapprox/errors.hpp"
#include "primeapprox/sequence_gen.hpp"

using namespace primeapprox;

namespace {
const PrimeTable& table() {
  static PrimeTable t(200000);
  return t;
}
}  // namespace

TEST_CASE("greedy covering: first iteration hand trace") {
  // x=0: a_2=0, x=1; second prime never reached within one pass.
  auto pass = greedy_cover_once(table(), 2);
  REQUIRE(pass.size() == 1);
  CHECK(pass[0].first == 2);
  CHECK(pass[0].second == 0);
}

TEST_CASE("greedy iteration boundaries") {
  PrimeTable big(5000000);
  NumeratorSequence seq = greedy_sequence(big, 5);
  REQUIRE(seq.iterations.size() == 5);
  std::pair<std::uint64_t, std::uint64_t> expect[] = {
      {2, 2}, {3, 5}, {7, 47}, {53, 2593}, {2609, 4835851}};
  for (int k = 0; k < 5; ++k) {
    CHECK(seq.iterations[k].first == expect[k].first);
    CHECK(seq.iterations[k].second == expect[k].second);
  }
  // third iteration numerators, hand-checked
  std::pair<std::uint64_t, std::uint64_t> third[] = {
      {7, 0},  {11, 3},  {13, 5},  {17, 9},  {19, 12}, {23, 16},
      {29, 22}, {31, 25}, {37, 32}, {41, 37}, {43, 40}, {47, 45}};
  for (auto [p, a] : third) CHECK(seq.require(p) == a);
  // entries are exactly the visited primes, sorted
  CHECK(seq.entries.front().first == 2);
  CHECK(seq.entries.back().first == 4835851);
  for (std::size_t k = 1; k < seq.entries.size(); ++k)
    CHECK(seq.entries[k - 1].first < seq.entries[k].first);
}

TEST_CASE("greedy invariant: within a pass, a_p/p + 2/p covers increasing x") {
  auto pass = greedy_cover_once(table(), 7);
  Rat x(0);
  for (auto [p, a] : pass) {
    CHECK(Rat(static_cast<unsigned long>(a),
              static_cast<unsigned long>(p)) <= x);
    x = Rat(static_cast<unsigned long>(a + 2), static_cast<unsigned long>(p));
  }
  CHECK(x >= 1);
}

TEST_CASE("rotation sequence for sqrt(2)") {
  NumeratorSequence seq = rotation_sequence(table(), sqrt_spec(2), 100);
  // n_2 = 1, n_3 = 2 (prime indices): a_p = floor(p * n_p * sqrt 2) mod p
  CHECK(seq.require(2) == 0);   // floor(2*1*1.414..) = 2 -> 0 mod 2
  CHECK(seq.require(3) == 2);   // floor(3*2*1.414..) = 8 -> 2 mod 3
  CHECK(seq.require(5) == 1);   // floor(5*3*1.414..) = 21 -> 1 mod 5
  CHECK(seq.entries.size() == table().pi(100));
  for (auto [p, a] : seq.entries) CHECK(a < p);
}

TEST_CASE("prime-rotation sequence for sqrt(2)") {
  NumeratorSequence seq = prime_rotation_sequence(table(), sqrt_spec(2), 50);
  // b_p = floor(p^2 sqrt 2) mod p
  CHECK(seq.require(3) == 0);   // floor(9*1.414..) = 12 -> 0
  CHECK(seq.require(5) == 0);   // floor(25*1.414..) = 35 -> 0
  CHECK(seq.require(7) == 6);   // floor(49*1.414..) = isqrt(4802) = 69 -> 6
  for (auto [p, a] : seq.entries) CHECK(a < p);
}

TEST_CASE("random sequence: determinism, range, uniformity") {
  NumeratorSequence a = random_sequence(table(), 20000, 42);
  NumeratorSequence b = random_sequence(table(), 20000, 42);
  NumeratorSequence c = random_sequence(table(), 20000, 43);
  CHECK(a.entries == b.entries);
  CHECK(a.entries != c.entries);
  CHECK(a.entries.size() == table().pi(20000));
  for (auto [p, v] : a.entries) CHECK(v < p);

  // chi-square uniformity of a_p mod 16 at a large prime count
  PrimeTable t2(400000);
  NumeratorSequence big = random_sequence(t2, 400000, 7);
  double bins[16] = {0};
  std::size_t n = 0;
  for (auto [p, v] : big.entries) {
    if (p < 1000) continue;  // skip tiny moduli
    ++bins[v % 16];
    ++n;
  }
  double expect = static_cast<double>(n) / 16.0;
  double chi2 = 0;
  for (double b16 : bins) chi2 += (b16 - expect) * (b16 - expect) / expect;
  // 15 dof: mean 15, generous ceiling
  CHECK(chi2 < 45.0);
}

TEST_CASE("sequence file format round trip") {
  NumeratorSequence seq = rotation_sequence(table(), golden(), 200);
  std::stringstream ss;
  write_sequence(ss, seq);
  NumeratorSequence back = read_sequence(ss);
  CHECK(back.limit == seq.limit);
  CHECK(back.entries == seq.entries);
  CHECK(back.provenance.generator == seq.provenance.generator);
  CHECK(back.provenance.params == seq.provenance.params);
}

TEST_CASE("at/require accessors") {
  NumeratorSequence seq = rotation_sequence(table(), sqrt_spec(2), 30);
  CHECK(seq.at(29).has_value());
  CHECK(!seq.at(31).has_value());
  CHECK(!seq.at(4).has_value());
  CHECK_THROWS_AS((void)seq.require(31), MissingEntry);
}
