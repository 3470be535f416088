#include "primeapprox/rat.hpp"

namespace primeapprox {

Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      Int n(s);
      return Rat(n);
    }
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    return make_rat(num, den);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational: \"" + s + "\"");
  }
}

std::string rat_str(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat tree_sum(std::vector<Rat> terms) {
  if (terms.empty()) return Rat(0);
  while (terms.size() > 1) {
    std::size_t half = (terms.size() + 1) / 2;
    for (std::size_t i = 0; 2 * i + 1 < terms.size(); ++i)
      terms[i] = terms[2 * i] + terms[2 * i + 1];
    if (terms.size() % 2 == 1) terms[half - 1] = terms.back();
    terms.resize(half);
  }
  return terms[0];
}

}  // namespace primeapprox
