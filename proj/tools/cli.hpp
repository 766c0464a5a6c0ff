#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hjfa::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kResourceLimit = 2;
inline constexpr int kVerificationFailed = 3;

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hjfa::cli
