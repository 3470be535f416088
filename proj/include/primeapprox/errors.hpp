#pragma once

#include <stdexcept>
#include <string>

namespace primeapprox {

// Continued-fraction data ran out before an exact decision could be made.
class PrecisionExhausted : public std::runtime_error {
 public:
  PrecisionExhausted(const std::string& what, long required_depth)
      : std::runtime_error(what), required_depth(required_depth) {}
  long required_depth;
};

// A sequence has no entry for a prime an operation needs.
class MissingEntry : public std::out_of_range {
 public:
  explicit MissingEntry(unsigned long long p)
      : std::out_of_range("sequence has no entry for prime " +
                          std::to_string(p)),
        prime(p) {}
  unsigned long long prime;
};

// A deletion rule removed more intervals than its schedule budget allows.
class ScheduleViolation : public std::runtime_error {
 public:
  ScheduleViolation(const std::string& what, int stage)
      : std::runtime_error(what), stage(stage) {}
  int stage;
};

}  // namespace primeapprox
