#include "primeapprox/sequence_gen.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "primeapprox/errors.hpp"
#include "primeapprox/rng.hpp"

namespace primeapprox {

using nlohmann::json;

std::optional<std::uint64_t> NumeratorSequence::at(std::uint64_t p) const {
  auto it = std::lower_bound(
      entries.begin(), entries.end(), p,
      [](const auto& e, std::uint64_t v) { return e.first < v; });
  if (it == entries.end() || it->first != p) return std::nullopt;
  return it->second;
}

std::uint64_t NumeratorSequence::require(std::uint64_t p) const {
  auto v = at(p);
  if (!v) throw MissingEntry(p);
  return *v;
}

NumeratorSequence random_sequence(const PrimeTable& table, std::uint64_t limit,
                                  std::uint64_t seed) {
  if (limit < 2) throw std::invalid_argument("random_sequence: limit >= 2");
  if (limit > table.limit())
    throw std::out_of_range("random_sequence: limit beyond sieve table");
  NumeratorSequence seq;
  seq.limit = limit;
  seq.provenance.generator = "random";
  seq.provenance.params["seed"] = std::to_string(seed);
  Rng rng(seed);
  for (std::uint64_t p : table.primes()) {
    if (p > limit) break;
    seq.entries.emplace_back(p, rng.below(p));
  }
  return seq;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> greedy_cover_once(
    const PrimeTable& table, std::uint64_t p0) {
  if (table.index_of(p0) == 0)
    throw std::invalid_argument("greedy_cover_once: p0 must be prime");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  // x = num/den exactly; after each step x = (a_q + 2) / q.
  std::uint64_t q = p0;
  unsigned __int128 num = 0, den = 1;
  for (;;) {
    // a_q = floor(q * x)
    unsigned __int128 aq = (static_cast<unsigned __int128>(q) * num) / den;
    pairs.emplace_back(q, static_cast<std::uint64_t>(aq));
    num = aq + 2;
    den = q;
    if (num >= den) return pairs;  // x >= 1
    if (q >= table.primes().back())
      throw std::out_of_range(
          "greedy_cover_once: sieve limit reached at prime " +
          std::to_string(q) + " with x = " +
          std::to_string((double)num / (double)den));
    q = table.next_prime(q);
  }
}

NumeratorSequence greedy_sequence(const PrimeTable& table,
                                  unsigned iterations) {
  if (iterations < 1)
    throw std::invalid_argument("greedy_sequence: iterations >= 1");
  NumeratorSequence seq;
  seq.provenance.generator = "greedy";
  seq.provenance.params["iterations"] = std::to_string(iterations);
  std::uint64_t start = 2;
  for (unsigned it = 0; it < iterations; ++it) {
    auto pairs = greedy_cover_once(table, start);
    seq.iterations.emplace_back(pairs.front().first, pairs.back().first);
    for (auto& pr : pairs) seq.entries.push_back(pr);
    start = table.next_prime(pairs.back().first);
  }
  seq.limit = seq.entries.back().first;
  return seq;
}

namespace {

NumeratorSequence rotation_common(const PrimeTable& table,
                                  const RealSpec& beta, std::uint64_t limit,
                                  bool prime_rotation) {
  if (limit < 2) throw std::invalid_argument("rotation: limit >= 2");
  if (limit > table.limit())
    throw std::out_of_range("rotation: limit beyond sieve table");
  NumeratorSequence seq;
  seq.limit = limit;
  seq.provenance.generator = prime_rotation ? "prime-rotation" : "rotation";
  seq.provenance.params["beta"] = real_spec_str(beta);
  for (std::uint64_t p : table.primes()) {
    if (p > limit) break;
    Int m = prime_rotation
                ? Int(static_cast<unsigned long>(p)) * static_cast<unsigned long>(p)
                : Int(static_cast<unsigned long>(p)) *
                      static_cast<unsigned long>(table.index_of(p));
    Int f = floor_mul(beta, m);
    Int a = f % static_cast<unsigned long>(p);
    if (a < 0) a += static_cast<unsigned long>(p);
    seq.entries.emplace_back(p, a.get_ui());
  }
  return seq;
}

}  // namespace

NumeratorSequence rotation_sequence(const PrimeTable& table,
                                    const RealSpec& beta,
                                    std::uint64_t limit) {
  return rotation_common(table, beta, limit, false);
}

NumeratorSequence prime_rotation_sequence(const PrimeTable& table,
                                          const RealSpec& beta,
                                          std::uint64_t limit) {
  return rotation_common(table, beta, limit, true);
}

void write_sequence(std::ostream& os, const NumeratorSequence& seq) {
  json hdr;
  hdr["schema"] = 1;
  hdr["generator"] = seq.provenance.generator;
  hdr["limit"] = seq.limit;
  hdr["params"] = seq.provenance.params;
  if (!seq.iterations.empty()) {
    json its = json::array();
    for (auto& [a, b] : seq.iterations) its.push_back({a, b});
    hdr["iterations"] = its;
  }
  os << "# primeapprox-sequence " << hdr.dump() << "\n";
  for (auto& [p, a] : seq.entries) os << p << "\t" << a << "\n";
}

NumeratorSequence read_sequence(std::istream& is) {
  std::string line;
  if (!std::getline(is, line))
    throw std::invalid_argument("sequence file: empty input");
  const std::string prefix = "# primeapprox-sequence ";
  if (line.rfind(prefix, 0) != 0)
    throw std::invalid_argument("sequence file: missing header");
  json hdr = json::parse(line.substr(prefix.size()));
  NumeratorSequence seq;
  seq.limit = hdr.at("limit").get<std::uint64_t>();
  seq.provenance.generator = hdr.at("generator").get<std::string>();
  for (auto& [k, v] : hdr.at("params").items())
    seq.provenance.params[k] = v.get<std::string>();
  if (hdr.contains("iterations"))
    for (auto& pair : hdr["iterations"])
      seq.iterations.emplace_back(pair[0].get<std::uint64_t>(),
                                  pair[1].get<std::uint64_t>());
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::uint64_t p, a;
    char tab;
    if (!(ss >> p) || !ss.get(tab) || tab != '\t' || !(ss >> a))
      throw std::invalid_argument("sequence file: malformed line: " + line);
    if (a >= p) throw std::invalid_argument("sequence file: a_p out of range");
    seq.entries.emplace_back(p, a);
  }
  return seq;
}

}  // namespace primeapprox
