#include "primeapprox/contfrac.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace primeapprox {

namespace {

void validate_surd(const QuadraticSurd& s) {
  if (s.c == 0) throw std::invalid_argument("surd: zero denominator");
  if (s.b == 0) throw std::invalid_argument("surd: b must be nonzero");
  if (s.d < 2 || is_perfect_square(s.d))
    throw std::invalid_argument("surd: d must be a nonsquare >= 2");
}

void validate_explicit(const ExplicitCf& cf) {
  if (cf.head.empty()) throw std::invalid_argument("cf: empty quotient list");
  if (cf.head[0] < 0) throw std::invalid_argument("cf: a0 must be >= 0");
  for (std::size_t i = 1; i < cf.head.size(); ++i)
    if (cf.head[i] < 1) throw std::invalid_argument("cf: quotients must be >= 1");
  for (const Int& a : cf.period)
    if (a < 1) throw std::invalid_argument("cf: periodic quotients must be >= 1");
}

// ceil(exp(q)) exactly via MPFR with escalating precision. Used only for
// small q (the Liouville rule); exp(q) is irrational so the two directed
// ceilings agree once precision suffices.
Int ceil_exp(const Int& q) {
  if (q > 256) throw std::invalid_argument("ceil_exp: exponent too large");
  for (mpfr_prec_t prec = 128; prec <= 4096; prec *= 2) {
    mpfr_t x, lo, hi;
    mpfr_init2(x, prec);
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
    mpfr_set_z(x, q.get_mpz_t(), MPFR_RNDN);
    mpfr_exp(lo, x, MPFR_RNDD);
    mpfr_exp(hi, x, MPFR_RNDU);
    Int clo, chi;
    mpfr_get_z(clo.get_mpz_t(), lo, MPFR_RNDU);  // ceil of lower bound
    mpfr_get_z(chi.get_mpz_t(), hi, MPFR_RNDU);  // ceil of upper bound
    mpfr_clears(x, lo, hi, (mpfr_ptr) nullptr);
    if (clo == chi) return clo;
  }
  throw std::logic_error("ceil_exp: precision escalation failed");
}

const std::vector<Int>& liouville_quotients(int depth) {
  if (depth < 1 || depth > 3)
    throw std::invalid_argument(
        "liouville depth must be in [1,3]: depth 4 would need "
        "ceil(exp(q_3)) with ~1.7e29 digits");
  static const std::vector<Int> all = [] {
    std::vector<Int> v;
    v.push_back(0);            // a0
    v.push_back(3);            // a1; q1 = 3
    v.push_back(ceil_exp(3));  // a2 = 21; q2 = 64
    v.push_back(ceil_exp(64)); // a3; q3 = a3*64 + 3
    return v;
  }();
  static const std::vector<Int> truncations[3] = {
      {all[0], all[1]},
      {all[0], all[1], all[2]},
      {all[0], all[1], all[2], all[3]},
  };
  return truncations[depth - 1];
}

// Lower bound on the first quotient beyond a truncated Liouville
// expansion. For depth < 3 the next quotient is exactly ceil(exp(q_depth));
// for depth 3 the true value ceil(exp(q_3)) is unrepresentable, but
// q_3 >= 2^98 so 2^256 is a certified lower bound.
Int liouville_tail_min(int depth) {
  if (depth == 1) return ceil_exp(3);
  if (depth == 2) return ceil_exp(64);
  Int m(1);
  m <<= 256;
  return m;
}

// Incremental quotient/convergent stream over any RealSpec variant.
class CfCursor {
 public:
  explicit CfCursor(const RealSpec& spec) {
    if (const auto* r = std::get_if<Rational>(&spec)) {
      kind_ = Kind::kRational;
      num_ = r->value.get_num();
      den_ = r->value.get_den();
      if (den_ <= 0) throw std::invalid_argument("rational spec: bad denominator");
    } else if (const auto* s = std::get_if<QuadraticSurd>(&spec)) {
      validate_surd(*s);
      kind_ = Kind::kSurd;
      Int a = s->a, b = s->b, c = s->c;
      if (b < 0) {
        a = -a;
        b = -b;
        c = -c;
      }
      Int ac = abs(c);
      P_ = a * ac;
      Q_ = c * ac;
      D_ = b * b * s->d * c * c;
    } else if (const auto* e = std::get_if<ExplicitCf>(&spec)) {
      validate_explicit(*e);
      kind_ = Kind::kExplicit;
      head_ = e->head;
      period_ = e->period;
    } else {
      const auto& l = std::get<LiouvilleCf>(spec);
      kind_ = Kind::kExplicit;
      head_ = liouville_quotients(l.depth);
      tail_min_ = liouville_tail_min(l.depth);
    }
  }

  // Ensure entries for indices 0..k exist; false if the expansion ended
  // (rational value or truncated tail) before index k.
  bool ensure(std::size_t k) {
    while (entries_.size() <= k) {
      if (!step()) return false;
    }
    return true;
  }

  const std::vector<Convergent>& entries() const { return entries_; }
  bool done() const { return done_; }
  // Expansion complete with an exactly known rational value.
  bool finite_value() const { return done_ && tail_min_ == 0; }
  const Int& tail_min() const { return tail_min_; }

 private:
  enum class Kind { kRational, kSurd, kExplicit };

  bool step() {
    if (done_) return false;
    Int a;
    switch (kind_) {
      case Kind::kRational: {
        if (den_ == 0) {
          done_ = true;
          return false;
        }
        a = floor_div(num_, den_);
        Int rem = num_ - a * den_;
        num_ = den_;
        den_ = rem;
        break;
      }
      case Kind::kSurd: {
        a = quad_floor_int(P_, Int(1), D_, Q_);
        Int Pn = a * Q_ - P_;
        Int Qn = (D_ - Pn * Pn) / Q_;
        P_ = Pn;
        Q_ = Qn;
        break;
      }
      case Kind::kExplicit: {
        std::size_t k = entries_.size();
        if (k < head_.size()) {
          a = head_[k];
        } else if (!period_.empty()) {
          a = period_[(k - head_.size()) % period_.size()];
        } else {
          done_ = true;
          return false;
        }
        break;
      }
    }
    push(a);
    return true;
  }

  void push(const Int& a) {
    Int p, q;
    if (entries_.empty()) {
      p = a;
      q = 1;
    } else if (entries_.size() == 1) {
      p = a * entries_[0].p + 1;
      q = a * entries_[0].q;
    } else {
      const auto& c1 = entries_[entries_.size() - 1];
      const auto& c2 = entries_[entries_.size() - 2];
      p = a * c1.p + c2.p;
      q = a * c1.q + c2.q;
    }
    entries_.push_back(Convergent{a, p, q});
  }

  Kind kind_;
  std::vector<Convergent> entries_;
  bool done_ = false;
  Int tail_min_ = 0;
  // rational state
  Int num_, den_;
  // surd PQa state: value (P + sqrt(D)) / Q
  Int P_, Q_, D_;
  // explicit state
  std::vector<Int> head_, period_;
};

RatInterval bracket_from(const CfCursor& cur, std::size_t k) {
  const auto& e = cur.entries();
  Rat a = make_rat(e[k - 1].p, e[k - 1].q);
  Rat b = make_rat(e[k].p, e[k].q);
  if (a > b) std::swap(a, b);
  return RatInterval{a, b};
}

}  // namespace

RealSpec golden() { return QuadraticSurd{1, 1, 5, 2}; }

RealSpec sqrt_spec(long d) { return QuadraticSurd{0, 1, d, 1}; }

std::optional<QuadVal> as_quad(const RealSpec& spec) {
  if (const auto* r = std::get_if<Rational>(&spec))
    return QuadVal::rational(r->value);
  if (const auto* s = std::get_if<QuadraticSurd>(&spec)) {
    validate_surd(*s);
    return QuadVal(make_rat(s->a, s->c), make_rat(s->b, s->c),
                   static_cast<long>(s->d.get_si()));
  }
  return std::nullopt;
}

RealSpec parse_real_spec(const std::string& text) {
  auto colon = text.find(':');
  std::string tag = colon == std::string::npos ? text : text.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (tag == "golden") return golden();
  if (tag == "rat") return Rational{parse_rat(rest)};
  if (tag == "sqrt") {
    Int d(rest);
    QuadraticSurd s{0, 1, d, 1};
    validate_surd(s);
    return s;
  }
  if (tag == "surd") {
    std::stringstream ss(rest);
    std::string part;
    std::vector<Int> v;
    while (std::getline(ss, part, ',')) v.emplace_back(part);
    if (v.size() != 4) throw std::invalid_argument("surd: need a,b,d,c");
    QuadraticSurd s{v[0], v[1], v[2], v[3]};
    validate_surd(s);
    return s;
  }
  if (tag == "cf") {
    auto semi = rest.find(';');
    if (semi == std::string::npos)
      throw std::invalid_argument("cf: missing ';' after a0");
    ExplicitCf cf;
    cf.head.emplace_back(rest.substr(0, semi));
    std::string tail = rest.substr(semi + 1);
    bool in_period = false;
    std::stringstream ss(tail);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty() && part.front() == '(') {
        in_period = true;
        part.erase(part.begin());
      }
      bool closes = !part.empty() && part.back() == ')';
      if (closes) part.pop_back();
      if (part.empty()) throw std::invalid_argument("cf: empty quotient");
      (in_period ? cf.period : cf.head).emplace_back(part);
      if (closes) in_period = false;
    }
    validate_explicit(cf);
    return cf;
  }
  if (tag == "liouville") {
    int depth = std::stoi(rest);
    liouville_quotients(depth);  // validates
    return LiouvilleCf{depth};
  }
  throw std::invalid_argument("unknown real spec: \"" + text + "\"");
}

std::string real_spec_str(const RealSpec& spec) {
  if (const auto* r = std::get_if<Rational>(&spec))
    return "rat:" + rat_str(r->value);
  if (const auto* s = std::get_if<QuadraticSurd>(&spec)) {
    if (s->a == 0 && s->b == 1 && s->c == 1) return "sqrt:" + s->d.get_str();
    if (s->a == 1 && s->b == 1 && s->d == 5 && s->c == 2) return "golden";
    return "surd:" + s->a.get_str() + "," + s->b.get_str() + "," +
           s->d.get_str() + "," + s->c.get_str();
  }
  if (const auto* e = std::get_if<ExplicitCf>(&spec)) {
    std::string out = "cf:" + e->head[0].get_str() + ";";
    for (std::size_t i = 1; i < e->head.size(); ++i) {
      if (i > 1) out += ",";
      out += e->head[i].get_str();
    }
    if (!e->period.empty()) {
      if (e->head.size() > 1) out += ",";
      out += "(";
      for (std::size_t i = 0; i < e->period.size(); ++i) {
        if (i > 0) out += ",";
        out += e->period[i].get_str();
      }
      out += ")";
    }
    return out;
  }
  return "liouville:" + std::to_string(std::get<LiouvilleCf>(spec).depth);
}

ConvergentList expand(const RealSpec& spec, std::size_t k) {
  if (k < 1) throw std::invalid_argument("expand: k >= 1 required");
  CfCursor cur(spec);
  bool full = cur.ensure(k - 1);
  ConvergentList out;
  out.entries = cur.entries();
  if (out.entries.size() > k) out.entries.resize(k);
  out.exhausted = !full;
  return out;
}

RatInterval enclose(const RealSpec& spec, const Rat& eps) {
  if (eps <= 0) throw std::invalid_argument("enclose: eps must be positive");
  if (const auto* r = std::get_if<Rational>(&spec))
    return RatInterval{r->value, r->value};
  CfCursor cur(spec);
  cur.ensure(1);
  std::size_t k = 1;
  for (;;) {
    if (cur.entries().size() > k) {
      const auto& e = cur.entries();
      // |conv_{k-1} - conv_k| = 1/(q_{k-1} q_k)
      if (Rat(e[k - 1].q * e[k].q) * eps >= 1) return bracket_from(cur, k);
      ++k;
      continue;
    }
    if (!cur.ensure(k)) break;
  }
  // Expansion ended at the last available convergent.
  const auto& e = cur.entries();
  std::size_t last = e.size() - 1;
  if (cur.finite_value()) {
    Rat v = make_rat(e[last].p, e[last].q);
    return RatInterval{v, v};
  }
  // Truncated (Liouville): value strictly between the last convergent and
  // the semiconvergent with next quotient = tail_min.
  const Int& M = cur.tail_min();
  Rat a = make_rat(e[last].p, e[last].q);
  Rat b = last == 0 ? make_rat(M * e[0].p + 1, M * e[0].q)
                    : make_rat(M * e[last].p + e[last - 1].p,
                               M * e[last].q + e[last - 1].q);
  if (a > b) std::swap(a, b);
  if (b - a <= eps) return RatInterval{a, b};
  throw PrecisionExhausted(
      "continued-fraction data exhausted before reaching requested width",
      static_cast<long>(last + 1));
}

Int floor_mul(const RealSpec& spec, const Int& m) {
  if (m < 1) throw std::invalid_argument("floor_mul: m >= 1 required");
  if (const auto* r = std::get_if<Rational>(&spec))
    return rat_floor(Rat(m) * r->value);
  if (const auto* s = std::get_if<QuadraticSurd>(&spec)) {
    validate_surd(*s);
    return quad_floor_int(m * s->a, m * s->b, s->d, s->c);
  }
  Rat eps = make_rat(1, 4 * m);
  for (int attempt = 0; attempt < 64; ++attempt) {
    RatInterval br = enclose(spec, eps);
    if (br.lo == br.hi) return rat_floor(Rat(m) * br.lo);
    Rat mlo = Rat(m) * br.lo;
    Rat mhi = Rat(m) * br.hi;
    Int fl = rat_floor(mlo);
    // beta < hi strictly, so an integer right endpoint belongs below.
    Int fh = rat_is_integer(mhi) ? rat_floor(mhi) - 1 : rat_floor(mhi);
    if (fl == fh) return fl;
    eps /= 4096;
  }
  throw PrecisionExhausted("floor_mul: could not separate beta*m from an integer",
                           -1);
}

int cmp_rat(const RealSpec& spec, const Rat& r) {
  if (const auto* v = std::get_if<Rational>(&spec)) return cmp(v->value, r);
  if (const auto* s = std::get_if<QuadraticSurd>(&spec)) {
    QuadVal q = *as_quad(spec);
    return quad_cmp_rat(q, r);
  }
  Rat eps = make_rat(1, 4 * r.get_den());
  for (int attempt = 0; attempt < 64; ++attempt) {
    RatInterval br = enclose(spec, eps);
    if (br.lo == br.hi) return cmp(br.lo, r);
    if (br.lo > r) return 1;
    if (br.hi < r) return -1;
    eps /= 4096;
  }
  throw PrecisionExhausted("cmp_rat: cannot separate beta from rational", -1);
}

double dist_to_int(const RealSpec& spec, const Int& q) {
  if (q < 1) throw std::invalid_argument("dist_to_int: q >= 1 required");
  if (const auto* s = std::get_if<QuadraticSurd>(&spec)) {
    QuadVal v = quad_scale(*as_quad(spec), Rat(q));
    QuadVal f = quad_frac(v);
    double t = f.to_double();
    return std::min(t, 1.0 - t);
  }
  Int fl = floor_mul(spec, q);
  RatInterval br = enclose(spec, make_rat(1, q * (Int(1) << 70)));
  Rat mid = (br.lo + br.hi) / 2;
  double t = rat_d(Rat(q) * mid - Rat(fl));
  return std::min(t, 1.0 - t);
}

namespace {

// Decide T >= delta * ln(q) with directed rounding (natural log). Equality
// can only happen at q = 1 where ln is exact.
bool ge_delta_log(const Rat& T, const Rat& delta, const Int& q) {
  if (q <= 0) throw std::invalid_argument("ge_delta_log: q must be positive");
  if (q == 1) return T >= 0;
  for (mpfr_prec_t prec = 128; prec <= 8192; prec *= 2) {
    mpfr_t x, l, bound;
    mpfr_init2(x, prec);
    mpfr_init2(l, prec);
    mpfr_init2(bound, prec);
    mpfr_set_z(x, q.get_mpz_t(), MPFR_RNDN);
    bool decided = false, result = false;
    mpfr_log(l, x, MPFR_RNDU);
    mpfr_mul_q(bound, l, delta.get_mpq_t(), MPFR_RNDU);
    if (mpfr_cmp_q(bound, T.get_mpq_t()) <= 0) {
      decided = true;
      result = true;  // T >= upper bound of delta*ln(q)
    } else {
      mpfr_log(l, x, MPFR_RNDD);
      mpfr_mul_q(bound, l, delta.get_mpq_t(), MPFR_RNDD);
      if (mpfr_cmp_q(bound, T.get_mpq_t()) > 0) {
        decided = true;
        result = false;  // T < lower bound
      }
    }
    mpfr_clears(x, l, bound, (mpfr_ptr) nullptr);
    if (decided) return result;
  }
  throw std::logic_error("ge_delta_log: precision escalation failed");
}

}  // namespace

IbaCertificate iba_certify(const RealSpec& spec, const Int& B,
                           const Rat& delta, std::size_t kmax) {
  if (B < 1) throw std::invalid_argument("iba: B >= 1 required");
  if (delta <= 0 || delta >= 1)
    throw std::invalid_argument("iba: delta in (0,1) required");
  if (kmax < 1) throw std::invalid_argument("iba: kmax >= 1 required");
  ConvergentList cl = expand(spec, kmax + 1);
  IbaCertificate cert{B, delta, {}};
  std::size_t n = cl.entries.size();  // indices 0..n-1; quotients at >= 1
  std::size_t j = 1;
  while (j < n) {
    if (cl.entries[j].a > B) {
      ++j;
      continue;
    }
    std::size_t end = j;
    while (end + 1 < n && cl.entries[end + 1].a <= B) ++end;
    std::size_t T = end - j;
    if (ge_delta_log(Rat(static_cast<unsigned long>(T)), delta,
                     cl.entries[j].q))
      cert.windows.push_back(IbaWindow{j, T});
    j = end + 1;
  }
  return cert;
}

double fuchs_kim_partial(const RealSpec& spec, std::uint64_t K) {
  if (K < 2) throw std::invalid_argument("fuchs_kim: K >= 2 required");
  if (std::holds_alternative<Rational>(spec))
    throw std::invalid_argument("fuchs_kim: beta must be irrational");
  CfCursor cur(spec);
  double total = 0;
  for (std::size_t k = 0;; ++k) {
    if (!cur.ensure(k + 1)) break;
    const auto& e = cur.entries();
    if (e[k + 1].q > Int(static_cast<unsigned long>(K))) break;
    std::uint64_t qk = e[k].q.get_ui();
    std::uint64_t qk1 = e[k + 1].q.get_ui();
    double dk = dist_to_int(spec, e[k].q);
    for (std::uint64_t n = qk; n < qk1; ++n) {
      double psi = n == 1 ? 1.0 : 1.0 / (static_cast<double>(n) *
                                         std::log(static_cast<double>(n)));
      total += std::min(psi, dk);
    }
  }
  return total;
}

DvStat dv_statistic(const RealSpec& spec, std::size_t K) {
  if (K < 1) throw std::invalid_argument("dv_statistic: K >= 1 required");
  ConvergentList cl = expand(spec, K + 1);
  DvStat out;
  Int sum = 0, mx = 0;
  std::size_t used = 0;
  double kappa = 0;
  for (std::size_t l = 1; l < cl.entries.size(); ++l) {
    sum += cl.entries[l].a;
    if (cl.entries[l].a > mx) mx = cl.entries[l].a;
    ++used;
    if (l >= 1 && cl.entries[l - 1].q >= 2) {
      double num = std::log(cl.entries[l].q.get_d());
      double den = std::log(cl.entries[l - 1].q.get_d());
      if (den > 0) kappa = std::max(kappa, num / den);
    }
  }
  out.sum_minus_max = sum - mx;
  out.reference = static_cast<double>(K) *
                  std::log(static_cast<double>(K)) / std::log(2.0);
  out.kappa_lower_estimate = kappa;
  out.terms_used = used;
  return out;
}

bool badly_range(const RealSpec& spec, int U, int V, const Int& B) {
  if (U > V) throw std::invalid_argument("badly_range: U <= V required");
  Int lo = U >= 2 ? (Int(1) << (U - 2)) : Int(0);
  Int hi = Int(1) << (V + 2);
  CfCursor cur(spec);
  cur.ensure(1);
  for (std::size_t t = 1;; ++t) {
    if (!cur.ensure(t)) {
      // Truncated tail: remaining quotients are >= tail_min; if the range
      // is not fully covered and the tail can exceed B, refuse.
      const auto& e = cur.entries();
      if (e.back().q >= hi) return true;
      return cur.tail_min() != 0 && cur.tail_min() <= B;
    }
    const auto& e = cur.entries();
    if (e[t - 1].q >= hi) return true;
    if (e[t].q > lo && e[t].a > B) return false;
  }
}

}  // namespace primeapprox
