#include "primeapprox/bohr_gap.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace primeapprox {

namespace {

// Integer bracket [lo, hi] with beta * 2^96 in [lo, hi], hi - lo small.
struct ScaledBracket {
  Int lo, hi;
};

constexpr int kScaleBits = 96;

ScaledBracket scaled_bracket(const RealSpec& beta) {
  Int one = Int(1) << kScaleBits;
  if (auto q = as_quad(beta)) {
    // x + y*sqrt(d): bracket sqrt(d)*2^96 by S <= sqrt(d)*2^96 < S+1.
    Int S = isqrt(Int(q->d) << (2 * kScaleBits));
    Rat a = q->x * Rat(one) + q->y * Rat(q->y >= 0 ? S : S + 1);
    Rat b = q->x * Rat(one) + q->y * Rat(q->y >= 0 ? S + 1 : S);
    return {rat_floor(a), rat_floor(b) + 1};
  }
  RatInterval br = enclose(beta, make_rat(1, Int(1) << (kScaleBits + 16)));
  return {rat_floor(br.lo * Rat(one)), rat_floor(br.hi * Rat(one)) + 1};
}

// Exact ||N*beta|| <= 2^-i (non-strict); boundary equality can only occur
// for rational-valued specs, so the slow path settles it exactly.
bool norm_le(const RealSpec& beta, std::uint64_t N, int i) {
  Rat t(static_cast<unsigned long>(N));
  if (auto q = as_quad(beta)) {
    QuadVal f = quad_frac(quad_scale(*q, t));
    Rat thr = make_rat(1, Int(1) << i);
    if (quad_cmp_rat(f, thr) <= 0) return true;
    return quad_cmp_rat(f, Rat(1) - thr) >= 0;
  }
  Rat thr = make_rat(1, Int(1) << i);
  Rat eps = make_rat(1, Int(1) << (i + 24));
  for (int attempt = 0; attempt < 64; ++attempt) {
    RatInterval br = enclose(beta, eps / t);
    Rat lo = t * br.lo, hi = t * br.hi;
    Int fl = rat_floor(lo);
    if (rat_floor(hi) == fl) {
      lo -= Rat(fl);
      hi -= Rat(fl);
      Rat d_lo = std::min(lo, Rat(Rat(1) - hi));
      Rat d_hi = std::min(hi, Rat(Rat(1) - lo));
      if (d_lo < 0) d_lo = 0;
      if (d_hi <= thr) return true;
      if (d_lo > thr) return false;
    }
    eps /= 4096;
  }
  throw PrecisionExhausted("bohr: cannot resolve ||N*beta|| boundary", -1);
}

}  // namespace

BohrSet bohr_enumerate(const RealSpec& beta, int i, int j) {
  if (i < 0 || j < i || j > 24)
    throw std::out_of_range("bohr_enumerate: need 0 <= i <= j <= 24");
  BohrSet out;
  out.beta = real_spec_str(beta);
  out.i = i;
  out.j = j;
  std::uint64_t bound = std::uint64_t(1) << j;
  if (i == 0) {  // ||.|| <= 1 always
    for (std::uint64_t N = 1; N <= bound; ++N) out.members.push_back(N);
    return out;
  }

  ScaledBracket b = scaled_bracket(beta);
  Int M = Int(1) << kScaleBits;
  Int thr = Int(1) << (kScaleBits - i);  // 2^-i in scaled units
  Int half = Int(1) << (kScaleBits - 1);
  for (std::uint64_t N = 1; N <= bound; ++N) {
    Int n(static_cast<unsigned long>(N));
    Int lo = n * b.lo, hi = n * b.hi;  // N*beta*2^96 in [lo, hi]
    Int fl = floor_div(lo, M);
    Int r = lo - fl * M;          // lower end of the fractional bracket
    Int w = hi - lo;
    if (r + w >= M) {             // bracket straddles an integer: near-hit
      if (norm_le(beta, N, i)) out.members.push_back(N);
      continue;
    }
    // distance to nearest integer of a value in [r, r+w] (tent function):
    // the min is at an endpoint, the max at the peak if straddled.
    Int e0 = std::min(r, Int(M - r));
    Int e1 = std::min(Int(r + w), Int(M - r - w));
    Int d_lo = std::min(e0, e1);
    Int d_hi = (r <= half && half <= r + w) ? half : std::max(e0, e1);
    if (d_hi <= thr) {
      out.members.push_back(N);
    } else if (d_lo <= thr) {  // ambiguous: settle exactly
      if (norm_le(beta, N, i)) out.members.push_back(N);
    }
  }
  return out;
}

namespace {

// Bracket of ||t*beta|| with width <= 2*t*eps.
RatInterval norm_bracket(const RealSpec& beta, const Int& t, const Rat& eps) {
  RatInterval br = enclose(beta, eps);
  Rat lo = Rat(t) * br.lo, hi = Rat(t) * br.hi;
  Int fl = rat_floor(lo);
  lo -= Rat(fl);
  hi -= Rat(fl);
  if (hi >= 1) return {Rat(0), Rat(1, 2)};  // straddles an integer; caller refines
  Rat d_lo = std::min(lo, Rat(Rat(1) - hi));
  Rat d_hi = std::min(hi, Rat(Rat(1) - lo));
  if (d_lo < 0) d_lo = 0;
  if (lo <= Rat(1, 2) && Rat(1, 2) <= hi) d_hi = Rat(1, 2);
  return {d_lo, d_hi};
}

}  // namespace

GapSpec gap_params(const RealSpec& beta, int i, int j, const Int& B) {
  if (i < 1 || j < i || j > 24)
    throw std::invalid_argument("gap_params: need 1 <= i <= j <= 24");
  if (!badly_range(beta, i - 2, j + 2, B))
    throw std::invalid_argument(
        "gap_params: [i-2, j+2] is not a B-badly approximable range");

  // r with q_{r-1} < 2^{(j+i)/2} <= q_r, compared via squares.
  Int target = Int(1) << (i + j);
  std::size_t k = 4;
  ConvergentList cl = expand(beta, k);
  while (cl.entries.back().q * cl.entries.back().q < target) {
    if (cl.exhausted)
      throw std::invalid_argument("gap_params: expansion exhausted");
    k *= 2;
    cl = expand(beta, k);
  }
  std::size_t r = 1;
  while (cl.entries[r].q * cl.entries[r].q < target) ++r;

  GapSpec spec;
  spec.x = cl.entries[r].q;
  spec.y = cl.entries[r].q + cl.entries[r - 1].q;

  // z = ceil(max over t in {x,y} of 2^j ||t beta|| + t / 2^i)
  Rat best(-1);
  bool best_set = false;
  Int z;
  Rat pow_j(Int(1) << j);
  for (const Int& t : {spec.x, spec.y}) {
    Rat shift = make_rat(t, Int(1) << i);
    Rat eps = make_rat(1, (Int(1) << 40) * t);
    Int ceil_v;
    bool done = false;
    for (int attempt = 0; attempt < 64 && !done; ++attempt) {
      RatInterval nb = norm_bracket(beta, t, eps);
      Rat v_lo = pow_j * nb.lo + shift, v_hi = pow_j * nb.hi + shift;
      auto rat_ceil = [](const Rat& v) -> Int {
        Rat nv(-v);
        return Int(-rat_floor(nv));
      };
      Int c_lo = rat_ceil(v_lo);
      Int c_hi = rat_ceil(v_hi);
      if (c_lo == c_hi) {
        ceil_v = c_lo;
        done = true;
      } else {
        eps /= 4096;
      }
    }
    if (!done)
      throw PrecisionExhausted("gap_params: cannot resolve ceiling", -1);
    if (!best_set || Rat(ceil_v) > best) {
      best = Rat(ceil_v);
      z = ceil_v;
      best_set = true;
    }
  }
  spec.z = z;
  return spec;
}

bool gap_contains(const GapSpec& spec, const Int& n) {
  if (spec.z < 0) return false;
  // One solution of a*x + b*y = n via extended gcd, then intersect the
  // integer t-ranges keeping |a0 + t*y| <= z and |b0 - t*x| <= z.
  Int g, u, v;
  mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), spec.x.get_mpz_t(),
             spec.y.get_mpz_t());
  if (g != 1) throw std::invalid_argument("gap_contains: gcd(x,y) != 1");
  Int a0 = u * n, b0 = v * n;
  auto ceil_div = [](const Int& p, const Int& q) -> Int {
    return Int(-floor_div(Int(-p), q));
  };
  Int t_lo = ceil_div(-spec.z - a0, spec.y);
  Int t_hi = floor_div(spec.z - a0, spec.y);
  Int s_lo = ceil_div(b0 - spec.z, spec.x);
  Int s_hi = floor_div(b0 + spec.z, spec.x);
  return std::max(t_lo, s_lo) <= std::min(t_hi, s_hi);
}

std::vector<Int> gap_positive_members(const GapSpec& spec) {
  std::vector<Int> out;
  if (spec.z <= 0) return out;
  Int max_n = spec.z * (spec.x + spec.y);
  if (spec.x.fits_ulong_p() && spec.y.fits_ulong_p() &&
      spec.z.fits_ulong_p() && max_n < (Int(1) << 32)) {
    std::uint64_t x = spec.x.get_ui(), y = spec.y.get_ui(),
                  z = spec.z.get_ui();
    std::vector<char> seen(static_cast<std::size_t>(max_n.get_ui()) + 1, 0);
    std::int64_t zi = static_cast<std::int64_t>(z);
    for (std::int64_t a = -zi; a <= zi; ++a) {
      std::int64_t base = a * static_cast<std::int64_t>(x);
      for (std::int64_t b = -zi; b <= zi; ++b) {
        std::int64_t n = base + b * static_cast<std::int64_t>(y);
        if (n > 0) seen[static_cast<std::size_t>(n)] = 1;
      }
    }
    for (std::size_t n = 1; n < seen.size(); ++n)
      if (seen[n]) out.emplace_back(static_cast<unsigned long>(n));
    return out;
  }
  std::set<Int> seen;
  for (Int a = -spec.z; a <= spec.z; ++a)
    for (Int b = -spec.z; b <= spec.z; ++b) {
      Int n = a * spec.x + b * spec.y;
      if (n > 0) seen.insert(n);
    }
  out.assign(seen.begin(), seen.end());
  return out;
}

std::vector<std::uint64_t> totient_sieve(std::uint64_t limit) {
  if (limit < 1) throw std::invalid_argument("totient_sieve: limit >= 1");
  std::vector<std::uint64_t> phi(limit + 1, 0);
  std::vector<std::uint64_t> primes;
  phi[1] = 1;
  for (std::uint64_t n = 2; n <= limit; ++n) {
    if (phi[n] == 0) {
      phi[n] = n - 1;
      primes.push_back(n);
    }
    for (std::uint64_t p : primes) {
      if (p > limit / n) break;
      if (n % p == 0) {
        phi[n * p] = phi[n] * p;
        break;
      }
      phi[n * p] = phi[n] * (p - 1);
    }
  }
  return phi;
}

Rat gap_phi_average(const GapSpec& spec,
                    const std::vector<std::uint64_t>& phi) {
  std::vector<Int> members = gap_positive_members(spec);
  std::vector<Rat> terms;
  terms.reserve(members.size());
  for (const Int& n : members) {
    if (!n.fits_ulong_p() || n.get_ui() >= phi.size())
      throw std::out_of_range("gap_phi_average: member beyond totient table");
    terms.push_back(make_rat(n, Int(phi[n.get_ui()])));
  }
  return tree_sum(std::move(terms));
}

double gap_phi_reference(const GapSpec& spec) {
  if (spec.z <= 0) return 0.0;
  double z = spec.z.get_d(), y = spec.y.get_d();
  return z * z + z * std::log(z * y);
}

}  // namespace primeapprox
