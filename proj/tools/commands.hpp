#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cbn::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kPrecondition = 2;
inline constexpr int kValidationFailed = 3;

// Runs one command line (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cbn::cli
