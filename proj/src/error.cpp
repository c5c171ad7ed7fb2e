#include "evroute/error.hpp"

#include <utility>

namespace evroute {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntax: return "syntax-error";
    case ErrorCode::kSchema: return "schema-error";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kInfeasiblePath: return "infeasible-path";
    case ErrorCode::kNegativeCycle: return "negative-cycle";
    case ErrorCode::kNoFeasiblePath: return "no-feasible-path";
    case ErrorCode::kPathBudgetExceeded: return "path-budget-exceeded";
    case ErrorCode::kNoFeasibleAssignment: return "no-feasible-assignment";
    case ErrorCode::kBudgetExceeded: return "budget-exceeded";
    case ErrorCode::kClampedRegion: return "clamped-region";
    case ErrorCode::kTopologyUnsupported: return "topology-unsupported";
    case ErrorCode::kDecompositionFailure: return "decomposition-failure";
    case ErrorCode::kNoConvergence: return "no-convergence";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::vector<int> nodes)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      nodes_(std::move(nodes)) {}

}  // namespace evroute
