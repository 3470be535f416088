#pragma once

// Generalized Cantor constructions: stage-wise equal partition with
// rule-driven deletions, the dimension lower bound 1 - log_{R_N} 2 under
// the bounded-deletion condition, and the two concrete schedules
// (twisted-approximation avoidance and greedy-interval avoidance).

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "primeapprox/contfrac.hpp"
#include "primeapprox/prime_engine.hpp"
#include "primeapprox/rat.hpp"

namespace primeapprox {

struct CantorSchedule {
  Rat lo, hi;                    // base interval I
  std::vector<std::uint64_t> R;  // R[n-1] = branching at stage n (>= 1)
  // budget: (stage n, ancestor depth m) -> max stage-n deletions allowed
  // per surviving depth-m interval. Enforced only for keys present.
  std::map<std::pair<int, int>, std::uint64_t> deletions;
};

struct DimensionBound {
  double value = 0;  // min over stages with R_N >= 2 of 1 - log 2/log R_N
  std::vector<double> per_stage;  // same quantity stage by stage (R_N >= 2)
  bool condition_ok = true;       // bounded-deletion condition at every stage
  int first_failing_stage = 0;    // 0 when condition_ok
};

// The bound requires, at every stage N with R_N >= 2: R_N >= 4 and
//   sum over budgets (N, m) of r * prod_{i=1}^{N-1-m} (4 / R_{N-i})
//     <= R_N / 4   (exact rational check).
// Stages with R_N = 1 are pass-through and skipped. The value is reported
// even when the condition fails (condition_ok says whether it certifies).
DimensionBound dimension_lower_bound(const CantorSchedule& schedule);

struct SurvivorInterval {
  Rat lo, hi;
  std::size_t parent;  // index into the previous level
};

struct SurvivorTree {
  Rat base_lo, base_hi;
  // levels[n-1] = stage-n survivors, in increasing order.
  std::vector<std::vector<SurvivorInterval>> levels;
  // observed max deletions per (stage, ancestor depth), all depths.
  std::map<std::pair<int, int>, std::uint64_t> observed;
};

// flags[i] != 0 means candidate i is deleted at this stage.
using DeletionRule = std::function<std::vector<char>(
    int stage, const std::vector<SurvivorInterval>& candidates)>;

// Partition each survivor into R_n equal pieces, delete per the rule,
// enforce any budgets present in schedule.deletions (ScheduleViolation).
SurvivorTree build_survivors(const CantorSchedule& schedule, int depth,
                             const DeletionRule& rule);

// R_N = 3, one middle deletion per parent at every stage.
CantorSchedule middle_third_schedule(int depth);
DeletionRule middle_third_rule();

// ---------------------------------------------------------------------
// Twisted-approximation schedule: base [0, 1/R], delta = 1/R^2; stage N
// (N >= 2) deletes every candidate meeting S_n = [x_n - delta/n,
// x_n + delta/n] for R^{N-1} <= n < R^N.
enum class XSeqRule {
  Multiples,      // x_n = {n beta}, all n
  PrimeRotation,  // x_p = (floor(p^2 beta) mod p)/p, prime n only
};

struct HdCertificate {
  bool passed = false;
  std::uint64_t budget = 0;  // R^2/16
  // per stage N >= 2: max deletions per depth-(N-2) ancestor
  std::map<int, std::uint64_t> max_deletions;
  int witness_stage = 0;         // 0 when passed
  double dimension_bound = 0;    // 1 - log_{R^2} 2
};

struct HdResult {
  CantorSchedule schedule;  // deletions filled with observed counts
  SurvivorTree tree;
  HdCertificate cert;
  std::uint64_t R = 0;
  int depth = 0;
  XSeqRule rule = XSeqRule::Multiples;
  std::string beta;
  // floor(2^64 * x_n) for n in [n_lo, n_hi); 0 for skipped n.
  std::vector<std::uint64_t> xfrac;
  std::vector<char> active;  // whether x_n is defined (prime filter)
  std::uint64_t n_lo = 0, n_hi = 0;
};

// beta must have bounded partial quotients over the touched range (the
// callers certify via contfrac); R >= 8, depth in [2, 4].
HdResult hd_badly_schedule(const RealSpec& beta, XSeqRule rule,
                           std::uint64_t R, int depth);

struct HdVerify {
  bool passed = false;
  double min_product = 0;      // min over near pairs of n*|mid - x_n|
  std::uint64_t witness_n = 0; // 0 when passed
  Rat witness_mid;
};

// Every surviving deepest-level midpoint alpha must satisfy
// n*|alpha - x_n| > delta for all covered n.
HdVerify hd_verify_midpoints(const RealSpec& beta, const HdResult& res);

// ---------------------------------------------------------------------
// Greedy-avoidance schedule on [1/4, 3/4]: stage n deletes candidates
// meeting the open interval (a_p/p - c/p, a_p/p + c/p) for p in greedy
// iteration n; branching k_n = floor(sqrt(p-_{n+1} p+_n) / C_{n-1}).
struct GreedyStage {
  int iteration = 0;
  std::uint64_t R = 1;       // k_n; 1 = pass-through (unusable stage)
  bool usable = false;
  std::uint64_t p_plus = 0;        // smallest p with I_p inside [3/4, 1]
  std::uint64_t p_minus_next = 0;  // largest next-iteration p inside [0, 1/4]
  std::uint64_t max_deletions_per_parent = 0;
  bool within_budget = true;  // observed <= R/4
  double diag_15cR = 0;       // reference bound 15*c*R_n
};

struct GreedyScheduleResult {
  CantorSchedule schedule;
  SurvivorTree tree;
  std::vector<GreedyStage> stages;
  Rat c;
  bool passed = false;
  int witness_stage = 0;
};

// Requires 0 < c < 1/4 and at least 2 greedy iterations within the sieve.
GreedyScheduleResult greedy_schedule(const PrimeTable& table, const Rat& c,
                                     unsigned iterations);

}  // namespace primeapprox
