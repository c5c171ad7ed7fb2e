#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "evroute/error.hpp"

namespace evroute::cli {

inline constexpr int kExitSolved = 0;
inline constexpr int kExitInfeasible = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

int exit_code_for(ErrorCode code);

/// Runs one command. `args` excludes the program name. Documents go to
/// `out` (or the --out file), diagnostics and timings to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace evroute::cli
