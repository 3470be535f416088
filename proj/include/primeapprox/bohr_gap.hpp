#pragma once

// Bohr sets N(i,j) = {N <= 2^j : ||N beta|| <= 2^-i}, rank-2 generalized
// arithmetic progressions P(x,y,z) = {ax + by : |a|,|b| <= z}, totient
// sieve and the n/phi(n) average.

#include <cstdint>
#include <vector>

#include "primeapprox/contfrac.hpp"
#include "primeapprox/rat.hpp"

namespace primeapprox {

struct BohrSet {
  std::string beta;
  int i = 0, j = 0;
  std::vector<std::uint64_t> members;  // sorted
};

// Exact enumeration; 1 <= i <= j <= 24 (i = 0 allowed: all N <= 2^j).
BohrSet bohr_enumerate(const RealSpec& beta, int i, int j);

struct GapSpec {
  Int x, y, z;  // gcd(x,y) = 1, x < y
};

// x = q_r, y = q_r + q_{r-1} with q_{r-1} < 2^{(j+i)/2} <= q_r, and
// z = ceil(max over t in {x,y} of 2^j ||t beta|| + t/2^i). Requires
// [i-2, j+2] to be a B-badly approximable range for beta.
GapSpec gap_params(const RealSpec& beta, int i, int j, const Int& B);

// Membership n = ax + by with |a|,|b| <= z, decided by bounded
// extended-gcd search.
bool gap_contains(const GapSpec& spec, const Int& n);

// Distinct positive members of P(x,y,z) (small z only).
std::vector<Int> gap_positive_members(const GapSpec& spec);

// phi(0..limit) by linear sieve; phi[0] = 0.
std::vector<std::uint64_t> totient_sieve(std::uint64_t limit);

// sum of n/phi(n) over distinct positive members, exact; throws
// std::out_of_range when a member exceeds the totient table.
Rat gap_phi_average(const GapSpec& spec, const std::vector<std::uint64_t>& phi);

// Reference value z^2 + z log(z y) for the average bound.
double gap_phi_reference(const GapSpec& spec);

}  // namespace primeapprox
