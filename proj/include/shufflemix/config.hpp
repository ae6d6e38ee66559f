#pragma once

#include <cstdint>

namespace shufflemix {

/// Budgets shared by every enumeration-backed computation.
struct Limits {
  /// Largest n for which S_n may be enumerated.
  int enum_limit = 10;
  /// Largest k^n accepted by the digit-word oracle.
  std::uint64_t word_limit = 10'000'000;
  /// Worker count for partitioned enumeration and sampling.
  unsigned threads = 1;
};

}  // namespace shufflemix
