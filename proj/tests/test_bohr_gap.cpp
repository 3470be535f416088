#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "primeapprox/bohr_gap.hpp"

using namespace primeapprox;

namespace {
// Brute-force ||N*beta|| <= 2^-i via exact Q(sqrt d) arithmetic.
bool slow_member(const RealSpec& beta, std::uint64_t N, int i) {
  auto q = as_quad(beta);
  REQUIRE(q.has_value());
  QuadVal f = quad_frac(quad_scale(*q, Rat(static_cast<unsigned long>(N))));
  Rat thr = make_rat(1, Int(1) << i);
  return quad_cmp_rat(f, thr) <= 0 ||
         quad_cmp_rat(f, Rat(Rat(1) - thr)) >= 0;
}
}  // namespace

TEST_CASE("bohr sets match the exact brute force") {
  for (const RealSpec& beta :
       {sqrt_spec(2), golden(), sqrt_spec(3), parse_real_spec("surd:1,2,7,3")}) {
    for (int i : {1, 2, 4}) {
      BohrSet s = bohr_enumerate(beta, i, 9);
      std::vector<std::uint64_t> expect;
      for (std::uint64_t N = 1; N <= 512; ++N)
        if (slow_member(beta, N, i)) expect.push_back(N);
      CHECK(s.members == expect);
    }
  }
}

TEST_CASE("bohr set of a rational beta includes exact boundary points") {
  // beta = 1/4: ||N/4|| <= 1/4 (non-strict) fails only for N = 2 mod 4
  BohrSet s = bohr_enumerate(parse_real_spec("rat:1/4"), 2, 4);
  CHECK(s.members.size() == 12);
  // ||N/4|| <= 1/8 only for multiples of 4
  BohrSet t = bohr_enumerate(parse_real_spec("rat:1/4"), 3, 4);
  CHECK(t.members == std::vector<std::uint64_t>{4, 8, 12, 16});
}

TEST_CASE("bohr almost-closure: N(i,j) + N(i,j) lands in N(i-1,j+1)") {
  BohrSet s = bohr_enumerate(sqrt_spec(2), 3, 8);
  BohrSet big = bohr_enumerate(sqrt_spec(2), 2, 9);
  for (std::uint64_t a : s.members)
    for (std::uint64_t b : s.members)
      CHECK(std::binary_search(big.members.begin(), big.members.end(), a + b));
}

TEST_CASE("i = 0 yields every N, and bad ranges throw") {
  BohrSet s = bohr_enumerate(golden(), 0, 4);
  CHECK(s.members.size() == 16);
  CHECK_THROWS_AS((void)bohr_enumerate(golden(), 3, 2), std::out_of_range);
  CHECK_THROWS_AS((void)bohr_enumerate(golden(), 1, 25), std::out_of_range);
}

TEST_CASE("progression parameters for sqrt(2), i=2, j=3") {
  GapSpec g = gap_params(sqrt_spec(2), 2, 3, Int(2));
  CHECK(g.x == 12);
  CHECK(g.y == 17);
  CHECK(g.z == 5);
  // the progression contains the whole Bohr set
  BohrSet s = bohr_enumerate(sqrt_spec(2), 2, 3);
  CHECK(s.members == std::vector<std::uint64_t>{2, 3, 5, 7});
  for (std::uint64_t n : s.members)
    CHECK(gap_contains(g, Int(static_cast<unsigned long>(n))));
}

TEST_CASE("containment holds across parameter choices") {
  for (const RealSpec& beta : {sqrt_spec(2), golden()}) {
    for (auto [i, j] : {std::pair<int, int>{2, 4}, {3, 6}, {4, 8}}) {
      GapSpec g = gap_params(beta, i, j, Int(2));
      CHECK(g.x < g.y);
      BohrSet s = bohr_enumerate(beta, i, j);
      for (std::uint64_t n : s.members)
        CHECK(gap_contains(g, Int(static_cast<unsigned long>(n))));
    }
  }
  CHECK_THROWS_AS((void)gap_params(sqrt_spec(2), 2, 3, Int(1)),
                  std::invalid_argument);
}

TEST_CASE("membership agrees with direct enumeration") {
  GapSpec g{Int(5), Int(7), Int(3)};
  std::vector<Int> members = gap_positive_members(g);
  // oracle set of all ax+by, |a|,|b| <= 3
  std::vector<char> in(5 * 3 + 7 * 3 + 1, 0);
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b) {
      int n = 5 * a + 7 * b;
      if (n > 0) in[static_cast<std::size_t>(n)] = 1;
    }
  std::vector<Int> expect;
  for (std::size_t n = 1; n < in.size(); ++n)
    if (in[n]) expect.emplace_back(static_cast<unsigned long>(n));
  CHECK(members == expect);
  for (int n = 1; n <= 36; ++n)
    CHECK(gap_contains(g, Int(n)) ==
          (n < static_cast<int>(in.size()) && in[static_cast<std::size_t>(n)]));
}

TEST_CASE("totients match a factorization oracle") {
  auto phi = totient_sieve(3000);
  CHECK(phi[0] == 0);
  CHECK(phi[1] == 1);
  auto slow_phi = [](std::uint64_t n) {
    std::uint64_t r = n;
    for (std::uint64_t p = 2; p * p <= n; ++p)
      if (n % p == 0) {
        r -= r / p;
        while (n % p == 0) n /= p;
      }
    if (n > 1) r -= r / n;
    return r;
  };
  for (std::uint64_t n = 2; n <= 3000; ++n) CHECK(phi[n] == slow_phi(n));
}

TEST_CASE("n/phi(n) average over P(1,2,2): hand value") {
  // positive members of P(1,2,2) are exactly 1..6:
  // 1/1 + 2/1 + 3/2 + 4/2 + 5/4 + 6/2 = 43/4
  GapSpec g{Int(1), Int(2), Int(2)};
  auto phi = totient_sieve(10);
  CHECK(gap_phi_average(g, phi) == Rat(43, 4));
  // member past the table throws
  auto tiny = totient_sieve(4);
  CHECK_THROWS_AS((void)gap_phi_average(g, tiny), std::out_of_range);
}

TEST_CASE("phi-average tracks the quadratic reference up to a constant") {
  double lo = 1e300, hi = 0;
  for (auto [i, j] : {std::pair<int, int>{2, 6}, {3, 8}, {4, 10}}) {
    GapSpec g = gap_params(sqrt_spec(2), i, j, Int(2));
    auto members = gap_positive_members(g);
    REQUIRE(!members.empty());
    auto phi = totient_sieve(members.back().get_ui());
    double ratio = rat_d(gap_phi_average(g, phi)) / gap_phi_reference(g);
    CHECK(ratio > 0);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  // the constant in front of z^2 + z log(zy) stays in a narrow band
  CHECK(hi / lo < 8.0);
  CHECK(hi < 20.0);
}
