#pragma once

#include <ostream>
#include <span>
#include <string>

namespace mvcs::cli {

// Entry point of the `mvcs` tool. args[0] is the program name.
// Returns 0 on success, 1 on a data or validation error, 2 on a usage error.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace mvcs::cli
