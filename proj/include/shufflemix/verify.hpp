#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shufflemix/config.hpp"

namespace shufflemix {

struct VerifyReport {
  std::string suite;
  int max_n = 0;
  std::int64_t max_k = 0;
  std::uint64_t checks = 0;
  /// One line per failing instance, with the exact values involved.
  std::vector<std::string> failures;
  /// Observations that are reported but not asserted.
  std::vector<std::string> notes;

  bool passed() const { return failures.empty(); }
};

/// worpitzky, eulerian, bernoulli, cyclic-descents, normalization, closure,
/// tv-equalities, bounds, oracle, affine-physical.
const std::vector<std::string_view>& verify_suites();

/// Runs one suite. Unset limits fall back to per-suite defaults (see README).
/// Throws DomainError for an unknown suite and ResourceError when the limits
/// need more enumeration than `limits` allows.
VerifyReport run_verify(std::string_view suite, std::optional<int> max_n, std::optional<std::int64_t> max_k,
                        const Limits& limits);

}  // namespace shufflemix
