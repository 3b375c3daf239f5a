#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace covals::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // verification or numerical failure
inline constexpr int kExitInput = 2;

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace covals::cli
