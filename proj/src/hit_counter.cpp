#include "primeapprox/hit_counter.hpp"

#include <cmath>

#include "primeapprox/parallel.hpp"
#include "primeapprox/rng.hpp"

namespace primeapprox {

namespace {

using u128 = unsigned __int128;

// Hit test for rational alpha = A/B, all operands fitting 128 bits:
// circle distance |alpha - a/p| <= c/p  <=>  min(m, Bp - m) * cd <= cn * B
// with m = (A*p - a*B) mod (B*p).
bool hit_u128(std::uint64_t A, std::uint64_t B, std::uint64_t p,
              std::uint64_t a, std::uint64_t cn, std::uint64_t cd) {
  u128 D = static_cast<u128>(B) * p;
  u128 x = static_cast<u128>(A) * p;
  u128 y = static_cast<u128>(a) * B;
  u128 m = x >= y ? (x - y) % D : D - 1 - ((y - x - 1) % D);
  u128 dist = m <= D - m ? m : D - m;
  return dist * cd <= static_cast<u128>(cn) * B;
}

bool hit_exact_rat(const Rat& alpha, std::uint64_t p, std::uint64_t a,
                   const Rat& c) {
  Rat t = alpha - Rat(static_cast<unsigned long>(a),
                      static_cast<unsigned long>(p));
  t -= rat_floor(t);  // in [0, 1)
  Rat dist = t <= Rat(1, 2) ? t : Rat(1) - t;
  return dist * static_cast<unsigned long>(p) <= c;
}

}  // namespace

std::uint64_t count_hits(const Rat& alpha, const NumeratorSequence& seq,
                         std::uint64_t X, const Rat& c) {
  if (X > seq.limit) throw std::invalid_argument("count_hits: X > seq.limit");
  if (c <= 0 || c > Rat(1, 2))
    throw std::invalid_argument("count_hits: need 0 < c <= 1/2");
  Rat red = alpha - Rat(rat_floor(alpha));
  bool fast = red.get_num().fits_ulong_p() && red.get_den().fits_ulong_p() &&
              c.get_num().fits_ulong_p() && c.get_den().fits_ulong_p() &&
              red.get_den().get_ui() <= (std::uint64_t(1) << 40) &&
              c.get_den().get_ui() <= (std::uint64_t(1) << 20);
  std::uint64_t count = 0;
  for (const auto& [p, a] : seq.entries) {
    if (p > X) break;
    if (fast) {
      if (hit_u128(red.get_num().get_ui(), red.get_den().get_ui(), p, a,
                   c.get_num().get_ui(), c.get_den().get_ui()))
        ++count;
    } else if (hit_exact_rat(red, p, a, c)) {
      ++count;
    }
  }
  return count;
}

std::uint64_t count_hits(const RealSpec& alpha, const NumeratorSequence& seq,
                         std::uint64_t X, const Rat& c) {
  if (const auto* r = std::get_if<Rational>(&alpha))
    return count_hits(r->value, seq, X, c);
  if (X > seq.limit) throw std::invalid_argument("count_hits: X > seq.limit");
  if (c <= 0 || c > Rat(1, 2))
    throw std::invalid_argument("count_hits: need 0 < c <= 1/2");
  std::uint64_t count = 0;
  for (const auto& [p, a] : seq.entries) {
    if (p > X) break;
    // Exact decision by refinement: alpha is irrational, so the distance
    // never sits exactly on the boundary and refinement terminates.
    Rat center(static_cast<unsigned long>(a), static_cast<unsigned long>(p));
    Rat radius = c / static_cast<unsigned long>(p);
    Rat eps = make_rat(1, Int(static_cast<unsigned long>(p)) << 40);
    bool decided = false, hit = false;
    for (int attempt = 0; attempt < 64 && !decided; ++attempt) {
      RatInterval br = enclose(alpha, eps);
      Rat t_lo = br.lo - center, t_hi = br.hi - center;
      Int sh = rat_floor(t_lo);
      t_lo -= Rat(sh);
      t_hi -= Rat(sh);  // t_lo in [0,1), t_hi < t_lo + eps
      // distance to nearest integer as an interval (width of [t_lo, t_hi]
      // is at most eps < 1/4, so at most one breakpoint is straddled)
      const Rat half(1, 2);
      Rat d_lo, d_hi;
      if (t_hi <= half) {
        d_lo = t_lo;
        d_hi = t_hi;
      } else if (t_lo >= half && t_hi <= 1) {
        d_lo = Rat(1) - t_hi;
        d_hi = Rat(1) - t_lo;
      } else if (t_lo >= half) {  // straddles the integer at 1
        d_lo = Rat(0);
        d_hi = std::max(Rat(Rat(1) - t_lo), Rat(t_hi - 1));
      } else {  // straddles 1/2
        d_hi = half;
        d_lo = half - std::max(Rat(half - t_lo), Rat(t_hi - half));
      }
      if (d_hi <= radius) {
        hit = true;
        decided = true;
      } else if (d_lo > radius) {
        hit = false;
        decided = true;
      } else {
        eps /= 4096;
      }
    }
    if (!decided)
      throw PrecisionExhausted("count_hits: cannot resolve hit boundary", -1);
    if (hit) ++count;
  }
  return count;
}

Rat psi(const PrimeTable& table, std::uint64_t X, const Rat& c) {
  if (X < 2) throw std::invalid_argument("psi: X >= 2 required");
  return 2 * c * table.mertens_sum(1, X);
}

McHitsReport mc_mean_hits(const NumeratorSequence& seq, const PrimeTable& table,
                          std::uint64_t X, const Rat& c, unsigned samples,
                          std::uint64_t seed, unsigned threads) {
  if (samples < 2) throw std::invalid_argument("mc_mean_hits: samples >= 2");
  if (X > seq.limit)
    throw std::invalid_argument("mc_mean_hits: X beyond sequence limit");
  if (c <= 0 || c > Rat(1, 2))
    throw std::invalid_argument("mc_mean_hits: need 0 < c <= 1/2");
  if (!c.get_num().fits_ulong_p() || !c.get_den().fits_ulong_p() ||
      c.get_den().get_ui() > (std::uint64_t(1) << 40))
    throw std::invalid_argument("mc_mean_hits: c denominator too large");
  std::uint64_t cn = c.get_num().get_ui(), cd = c.get_den().get_ui();

  std::vector<std::uint64_t> counts(samples);
  parallel_for(samples, threads, [&](std::uint64_t s) {
    Rng rng = Rng::stream(seed, s);
    std::uint64_t A = rng.next();  // alpha = A / 2^64
    std::uint64_t n = 0;
    for (const auto& [p, a] : seq.entries) {
      if (p > X) break;
      // alpha = A/2^64: specialised form of the u128 hit test with B = 2^64
      u128 D = static_cast<u128>(p) << 64;
      u128 x = static_cast<u128>(A) * p;
      u128 y = static_cast<u128>(a) << 64;
      u128 m = x >= y ? (x - y) % D : D - 1 - ((y - x - 1) % D);
      u128 dist = m <= D - m ? m : D - m;
      // dist * cd <= cn * 2^64, with cd small so dist*cd fits 128 bits
      // only when dist < 2^128/cd; dist < 2^64 * p < 2^87, cd <= 2^20: ok.
      if (dist * cd <= (static_cast<u128>(cn) << 64)) ++n;
    }
    counts[s] = n;
  });

  McHitsReport rep;
  rep.X = X;
  rep.c = c;
  rep.samples = samples;
  rep.seed = seed;
  double sum = 0;
  for (auto n : counts) sum += static_cast<double>(n);
  rep.mean = sum / samples;
  double var = 0;
  for (auto n : counts) {
    double d = static_cast<double>(n) - rep.mean;
    var += d * d;
  }
  rep.variance = var / (samples - 1);
  rep.se = std::sqrt(rep.variance / samples);
  rep.psi_exact = psi(table, X, c);
  rep.z = rep.se > 0 ? (rep.mean - rat_d(rep.psi_exact)) / rep.se : 0.0;
  return rep;
}

HitReport growth_table(const RealSpec& alpha, const NumeratorSequence& seq,
                       const PrimeTable& table, const Rat& c,
                       const std::vector<std::uint64_t>& checkpoints) {
  for (std::size_t i = 1; i < checkpoints.size(); ++i)
    if (checkpoints[i] <= checkpoints[i - 1])
      throw std::invalid_argument("growth_table: checkpoints must increase");
  HitReport rep;
  rep.alpha = real_spec_str(alpha);
  rep.c = c;
  for (std::uint64_t X : checkpoints) {
    HitReport::Row row;
    row.X = X;
    row.count = count_hits(alpha, seq, X, c);
    row.psi = psi(table, X, c);
    double ll = std::log(std::log(static_cast<double>(X)));
    row.ratio = static_cast<double>(row.count) / (2 * rat_d(c) * ll);
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace primeapprox
