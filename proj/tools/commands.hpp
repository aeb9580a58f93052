#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace srisk::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kUsage = 1, kValidation = 2, kInfeasible = 3 };

/// Runs the srisk command line; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace srisk::cli
