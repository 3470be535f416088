#include "primeapprox/measure_lab.hpp"

#include <algorithm>
#include <cmath>

#include "primeapprox/errors.hpp"
#include "primeapprox/parallel.hpp"
#include "primeapprox/rng.hpp"

namespace primeapprox {

Rat union_measure(IntervalSet& s) {
  s.normalize();
  return s.measure();
}

Rat overlap_integral(std::uint64_t p, std::uint64_t q, const Rat& c) {
  if (p >= q) throw std::invalid_argument("overlap_integral: need p < q");
  if (c <= 0 || c >= Rat(1, 2))
    throw std::invalid_argument("overlap_integral: need 0 < c < 1/2");
  auto family = [&](std::uint64_t m) {
    IntervalSet s;
    Rat radius = c / static_cast<unsigned long>(m);
    for (std::uint64_t k = 0; k < m; ++k)
      s.add_arc(Rat(static_cast<unsigned long>(k),
                    static_cast<unsigned long>(m)),
                radius);
    s.normalize();
    return s;
  };
  IntervalSet a = family(p);
  IntervalSet b = family(q);
  IntervalSet inter = IntervalSet::intersect(a, b);
  return inter.measure();
}

IntervalSet range_arcs(const NumeratorSequence& seq, std::uint64_t X,
                       std::uint64_t Y, const Rat& c) {
  IntervalSet s;
  for (const auto& [p, a] : seq.entries) {
    if (p <= X) continue;
    if (p > Y) break;
    s.add_arc(Rat(static_cast<unsigned long>(a), static_cast<unsigned long>(p)),
              c / static_cast<unsigned long>(p));
  }
  return s;
}

Rat sifted_measure(const NumeratorSequence& seq, std::uint64_t X,
                   std::uint64_t Y, const Rat& c, const PrimeTable* table) {
  if (X >= Y || Y > seq.limit)
    throw std::invalid_argument("sifted_measure: need X < Y <= seq.limit");
  if (table) {
    for (std::uint64_t p : table->primes()) {
      if (p <= X) continue;
      if (p > Y) break;
      seq.require(p);
    }
  }
  IntervalSet s = range_arcs(seq, X, Y, c);
  return Rat(1) - union_measure(s);
}

SieveAvgReport sieve_average_experiment(const PrimeTable& table,
                                        std::uint64_t X,
                                        std::vector<std::uint64_t> ys,
                                        const Rat& c, unsigned trials,
                                        std::uint64_t seed, unsigned threads) {
  if (trials < 1) throw std::invalid_argument("sieve_average: trials >= 1");
  if (ys.empty()) throw std::invalid_argument("sieve_average: no Y values");
  std::sort(ys.begin(), ys.end());
  std::uint64_t ymax = ys.back();
  if (X >= ys.front() || ymax > table.limit())
    throw std::invalid_argument("sieve_average: need X < Y <= sieve limit");

  SieveAvgReport rep;
  rep.X = X;
  rep.c = c;
  rep.trials = trials;
  rep.seed = seed;

  // values[t * ys.size() + yi]
  std::vector<Rat> values(static_cast<std::size_t>(trials) * ys.size());
  parallel_for(trials, threads, [&](std::uint64_t t) {
    std::uint64_t trial_seed =
        splitmix64(seed ^ splitmix64(t + 0x7f4a7c15ULL));
    NumeratorSequence seq = random_sequence(table, ymax, trial_seed);
    for (std::size_t yi = 0; yi < ys.size(); ++yi)
      values[static_cast<std::size_t>(t) * ys.size() + yi] =
          sifted_measure(seq, X, ys[yi], c);
  });

  double prev_mean = 2.0, prod_min = 1e300, prod_max = 0;
  bool decreasing = true;
  for (std::size_t yi = 0; yi < ys.size(); ++yi) {
    SieveAvgReport::PerY py;
    py.Y = ys[yi];
    std::vector<Rat> col(trials);
    for (unsigned t = 0; t < trials; ++t) col[t] = values[t * ys.size() + yi];
    py.mean = tree_sum(col) / trials;
    py.mean_d = rat_d(py.mean);
    double var = 0;
    for (unsigned t = 0; t < trials; ++t) {
      double d = rat_d(values[t * ys.size() + yi]) - py.mean_d;
      var += d * d;
    }
    py.variance = trials > 1 ? var / (trials - 1) : 0.0;
    py.H = table.mertens_sum(X, ys[yi]);
    py.product = py.mean_d * rat_d(py.H);
    if (py.mean_d > prev_mean) decreasing = false;
    prev_mean = py.mean_d;
    prod_min = std::min(prod_min, py.product);
    prod_max = std::max(prod_max, py.product);
    rep.per_y.push_back(std::move(py));
  }
  rep.mean_decreasing = decreasing;
  rep.product_stable_factor2 = prod_max <= 2.0 * prod_min;
  return rep;
}

CounterexampleReport counterexample_block_measure(const PrimeTable& table,
                                                  const RealSpec& beta, int k,
                                                  const Rat& c) {
  const auto* l = std::get_if<LiouvilleCf>(&beta);
  if (!l) throw std::invalid_argument("counterexample: beta must be liouville");
  if (k < 1 || k > l->depth)
    throw std::invalid_argument("counterexample: k within computed depth");
  if (c <= 0 || c >= Rat(1, 2))
    throw std::invalid_argument("counterexample: need 0 < c < 1/2");

  ConvergentList cl = expand(beta, static_cast<std::size_t>(l->depth) + 1);
  CounterexampleReport rep;
  rep.k = k;
  rep.c = c;
  rep.q_k = cl.entries[static_cast<std::size_t>(k)].q;
  bool have_next = cl.entries.size() > static_cast<std::size_t>(k) + 1;
  rep.q_k1 = have_next ? cl.entries[static_cast<std::size_t>(k) + 1].q : Int(0);

  if (rep.q_k > static_cast<unsigned long>(table.limit()))
    throw std::out_of_range("counterexample: q_k beyond sieve limit");
  std::uint64_t lo = rep.q_k.get_ui();
  std::uint64_t hi;  // block covers primes lo <= p < hi
  if (have_next && rep.q_k1 <= static_cast<unsigned long>(table.limit())) {
    hi = rep.q_k1.get_ui();
  } else {
    hi = table.limit() + 1;
    rep.truncated = true;
  }

  // Bracket beta tightly once; {p beta} enclosures follow by scaling.
  RatInterval br = enclose(
      beta, make_rat(1, Int(static_cast<unsigned long>(hi)) * (Int(1) << 96)));

  IntervalSet s;
  rep.p_lo = 0;
  for (std::uint64_t p : table.primes()) {
    if (p < lo) continue;
    if (p >= hi) break;
    if (rep.p_lo == 0) rep.p_lo = p;
    rep.p_hi = p;
    Int fl = floor_mul(beta, Int(static_cast<unsigned long>(p)));
    Rat frac_lo = Rat(static_cast<unsigned long>(p)) * br.lo - Rat(fl);
    Rat frac_hi = Rat(static_cast<unsigned long>(p)) * br.hi - Rat(fl);
    if (frac_lo < 0) frac_lo = 0;
    if (frac_hi > 1) frac_hi = 1;
    // outer enclosure of [{p beta} - c/p, {p beta} + c/p]
    Rat radius = c / static_cast<unsigned long>(p);
    Rat a = frac_lo - radius, b = frac_hi + radius;
    if (b - a >= 1) {
      s.add_arc(Rat(0), Rat(1, 2));  // full circle (cannot happen for p >= 3)
      continue;
    }
    if (a < 0) {
      s.add_interval(Rat(0), b);
      s.add_interval(a + 1, Rat(1));
    } else if (b > 1) {
      s.add_interval(a, Rat(1));
      s.add_interval(Rat(0), b - 1);
    } else {
      s.add_interval(a, b);
    }
  }
  rep.measure = union_measure(s);
  double lq = std::log(rep.q_k.get_d());
  rep.reference = std::log(lq) / lq;
  rep.fitted_C = rat_d(rep.measure) / rep.reference;
  return rep;
}

DyadicBlockReport dyadic_block_overlap(const PrimeTable& table,
                                       const RealSpec& beta, const Int& B,
                                       const Rat& c, int U, int V) {
  if (U < 1 || U > V) throw std::invalid_argument("dyadic: need 1 <= U <= V");
  auto bq = as_quad(beta);
  if (!bq || bq->is_rational())
    throw std::invalid_argument("dyadic: beta must be a quadratic surd");
  if (c <= 0 || c * 10 * B >= 1)
    throw std::invalid_argument("dyadic: need 0 < c < 1/(10B)");
  if (!badly_range(beta, U - 2, V + 2, B))
    throw std::invalid_argument(
        "dyadic: [U-2, V+2] is not a B-badly approximable range for beta");
  if ((std::uint64_t(1) << (V + 1)) > table.limit() + 1)
    throw std::invalid_argument("dyadic: 2^(V+1) beyond sieve limit");

  DyadicBlockReport rep;
  rep.U = U;
  rep.V = V;
  rep.c = c;
  rep.B = B;

  std::vector<QuadIntervalSet> blocks;
  for (int i = U; i <= V; ++i) {
    QuadIntervalSet s;
    Rat radius = c / Rat(Int(1) << (i + 1));
    std::uint64_t plo = std::uint64_t(1) << i, phi = std::uint64_t(1) << (i + 1);
    std::size_t count = 0;
    for (std::uint64_t p : table.primes()) {
      if (p < plo) continue;
      if (p >= phi) break;
      QuadVal center =
          quad_frac(quad_scale(*bq, Rat(static_cast<unsigned long>(p))));
      s.add_arc(center, QuadVal::rational(radius));
      ++count;
    }
    DyadicBlockReport::Block blk;
    blk.i = i;
    blk.arc_count = count;
    blk.disjoint = s.interiors_disjoint();
    s.normalize();
    blk.measure = s.measure();
    blk.measure_d = blk.measure.to_double();
    // lambda(E_i) equals the sum of arc lengths iff the arcs are disjoint;
    // the sum is 2 * count * radius exactly.
    Rat arc_sum = radius * 2 * static_cast<unsigned long>(count);
    QuadVal diff = quad_sub(blk.measure, QuadVal::rational(arc_sum));
    blk.sum_identity = quad_sign(diff) == 0;
    rep.blocks.push_back(blk);
    blocks.push_back(std::move(s));
  }

  double total = 0;
  for (auto& b : rep.blocks) total += b.measure_d;
  double pair_total = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    pair_total += rep.blocks[i].measure_d;  // diagonal term
    for (std::size_t j = i + 1; j < blocks.size(); ++j) {
      QuadIntervalSet inter = QuadIntervalSet::intersect(blocks[i], blocks[j]);
      pair_total += inter.measure().to_double();
    }
  }
  rep.total = total;
  rep.pair_total = pair_total;
  rep.qi_ratio = total > 0 ? pair_total / (total * total) : 0;
  return rep;
}

}  // namespace primeapprox
