#pragma once

// Finite unions of arcs on the circle R/Z with exact endpoints. The scalar
// is a template parameter: exact rationals (Rat) for most experiments, and
// Q(sqrt(d)) elements (QuadVal) for dyadic blocks of quadratic rotations.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "primeapprox/quad.hpp"
#include "primeapprox/rat.hpp"

namespace primeapprox {

// Scalar adaptors: comparison and conversion from small integers/rationals.
struct RatScalarOps {
  using Scalar = Rat;
  static int compare(const Rat& a, const Rat& b) { return cmp(a, b); }
  static Rat from_rat(const Rat& r) { return r; }
};

struct QuadScalarOps {
  using Scalar = QuadVal;
  static int compare(const QuadVal& a, const QuadVal& b) {
    return quad_cmp(a, b);
  }
  static QuadVal from_rat(const Rat& r) { return QuadVal::rational(r); }
};

template <class Ops>
class ArcSetT {
 public:
  using S = typename Ops::Scalar;

  struct Arc {
    S lo, hi;  // closed arc [lo, hi] with 0 <= lo < hi <= 1
  };

  // Arc [center - radius, center + radius] mod 1; center must lie in
  // [0, 1). radius >= 1/2 clamps to the full circle (flagged).
  void add_arc(const S& center, const S& radius) {
    if (Ops::compare(radius, Ops::from_rat(Rat(0))) < 0)
      throw std::invalid_argument("arc with negative radius");
    if (Ops::compare(center, Ops::from_rat(Rat(0))) < 0 ||
        Ops::compare(center, Ops::from_rat(Rat(1))) >= 0)
      throw std::invalid_argument("arc center must lie in [0,1)");
    if (Ops::compare(radius, Ops::from_rat(Rat(1, 2))) >= 0) {
      full_ = true;
      clamped_ = true;
      return;
    }
    S lo = center - radius;
    S hi = center + radius;
    const S zero = Ops::from_rat(Rat(0));
    const S one = Ops::from_rat(Rat(1));
    if (Ops::compare(lo, zero) < 0) {
      push(zero, hi);
      push(lo + one, one);
    } else if (Ops::compare(hi, one) > 0) {
      push(lo, one);
      push(zero, hi - one);
    } else {
      push(lo, hi);
    }
  }

  // Already-unwrapped interval inside [0, 1].
  void add_interval(const S& lo, const S& hi) {
    if (Ops::compare(lo, Ops::from_rat(Rat(0))) < 0 ||
        Ops::compare(hi, Ops::from_rat(Rat(1))) > 0 ||
        Ops::compare(lo, hi) > 0)
      throw std::invalid_argument("interval outside [0,1]");
    push(lo, hi);
  }

  // Sort by left endpoint and merge overlapping/touching arcs.
  void normalize() {
    if (full_ || normalized_) return;
    sort_raw();
    std::vector<Arc> merged;
    for (auto& a : arcs_) {
      if (!merged.empty() && Ops::compare(a.lo, merged.back().hi) <= 0) {
        if (Ops::compare(a.hi, merged.back().hi) > 0) merged.back().hi = a.hi;
      } else {
        merged.push_back(a);
      }
    }
    arcs_ = std::move(merged);
    normalized_ = true;
    if (arcs_.size() == 1 &&
        Ops::compare(arcs_[0].lo, Ops::from_rat(Rat(0))) == 0 &&
        Ops::compare(arcs_[0].hi, Ops::from_rat(Rat(1))) == 0)
      full_ = true;
  }

  // True when no two raw arcs share interior points (call before
  // normalize merges them). Wrap-split halves of one arc never overlap.
  bool interiors_disjoint() {
    if (full_) return arcs_.empty();
    sort_raw();
    for (std::size_t i = 0; i + 1 < arcs_.size(); ++i)
      if (Ops::compare(arcs_[i].hi, arcs_[i + 1].lo) > 0) return false;
    return true;
  }

  S measure() const {
    if (full_) return Ops::from_rat(Rat(1));
    if (!normalized_)
      throw std::logic_error("measure() requires normalize() first");
    std::vector<S> lengths;
    lengths.reserve(arcs_.size());
    for (auto& a : arcs_) lengths.push_back(a.hi - a.lo);
    return balanced_sum(std::move(lengths));
  }

  static ArcSetT intersect(const ArcSetT& a, const ArcSetT& b) {
    if (a.full_) return b;
    if (b.full_) return a;
    if (!a.normalized_ || !b.normalized_)
      throw std::logic_error("intersect() requires normalized sets");
    ArcSetT out;
    std::size_t i = 0, j = 0;
    while (i < a.arcs_.size() && j < b.arcs_.size()) {
      const S& lo = Ops::compare(a.arcs_[i].lo, b.arcs_[j].lo) > 0
                        ? a.arcs_[i].lo
                        : b.arcs_[j].lo;
      const S& hi = Ops::compare(a.arcs_[i].hi, b.arcs_[j].hi) < 0
                        ? a.arcs_[i].hi
                        : b.arcs_[j].hi;
      if (Ops::compare(lo, hi) < 0) out.push(lo, hi);
      if (Ops::compare(a.arcs_[i].hi, b.arcs_[j].hi) < 0)
        ++i;
      else
        ++j;
    }
    out.normalize();
    return out;
  }

  bool full() const { return full_; }
  bool clamped() const { return clamped_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

 private:
  void push(const S& lo, const S& hi) {
    if (Ops::compare(lo, hi) >= 0) return;  // drop empty/point arcs
    arcs_.push_back(Arc{lo, hi});
    normalized_ = false;
    sorted_ = false;
  }

  void sort_raw() {
    if (sorted_) return;
    std::sort(arcs_.begin(), arcs_.end(), [](const Arc& x, const Arc& y) {
      int c = Ops::compare(x.lo, y.lo);
      if (c != 0) return c < 0;
      return Ops::compare(x.hi, y.hi) < 0;
    });
    sorted_ = true;
  }

  static S balanced_sum(std::vector<S> terms) {
    if (terms.empty()) return Ops::from_rat(Rat(0));
    while (terms.size() > 1) {
      std::size_t half = (terms.size() + 1) / 2;
      for (std::size_t i = 0; 2 * i + 1 < terms.size(); ++i)
        terms[i] = terms[2 * i] + terms[2 * i + 1];
      if (terms.size() % 2 == 1) terms[half - 1] = terms.back();
      terms.resize(half);
    }
    return terms[0];
  }

  std::vector<Arc> arcs_;
  bool full_ = false;
  bool clamped_ = false;
  bool normalized_ = true;  // empty set is normalized
  bool sorted_ = true;
};

using IntervalSet = ArcSetT<RatScalarOps>;
using QuadIntervalSet = ArcSetT<QuadScalarOps>;

}  // namespace primeapprox
