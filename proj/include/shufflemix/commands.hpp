#pragma once

#include <string_view>
#include <vector>

#include "shufflemix/config.hpp"
#include "shufflemix/serialize.hpp"

namespace shufflemix {

struct CommandResult {
  Json payload;
  bool verify_failed = false;
};

/// eval, tv, mix-table, simulate, verify, dist.
const std::vector<std::string_view>& command_names();

/// Runs one command on a JSON object of arguments and returns its payload.
/// Throws UsageError for malformed arguments, and the library's own errors
/// otherwise. A failed verify suite is reported through verify_failed, not
/// thrown.
CommandResult run_command(std::string_view name, const Json& args, const Limits& limits);

}  // namespace shufflemix
