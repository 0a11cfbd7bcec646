#pragma once

#include <cstdint>

namespace prefrev {

/// Resource caps. Every enumeration and every solver call is bounded so that runaway inputs fail loudly.
struct Limits {
  std::uint64_t max_models = 100000;             // preference assignments / partial orders per enumeration
  std::uint64_t max_decisions = 10000000;        // SAT decisions per solver call
  std::uint64_t max_bases = 100000;              // maximal consistent subsets per theory
  std::uint64_t max_linearizations = 1000000;    // total orders per partial order

  /// Defaults overridden by PREFREV_MAX_MODELS, PREFREV_MAX_DECISIONS, PREFREV_MAX_BASES and
  /// PREFREV_MAX_LINEARIZATIONS when those are set to positive integers.
  static Limits from_environment();
};

}  // namespace prefrev
