#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace laminata::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Runs one command line (program name excluded). Returns the process exit code:
/// 0 success, 1 mathematical failure, 2 bad input or unreadable files.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace laminata::cli
