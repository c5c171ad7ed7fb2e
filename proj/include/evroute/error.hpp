#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace evroute {

enum class ErrorCode {
  kSyntax,
  kSchema,
  kInvalidArgument,
  kInfeasiblePath,
  kNegativeCycle,
  kNoFeasiblePath,
  kPathBudgetExceeded,
  kNoFeasibleAssignment,
  kBudgetExceeded,
  kClampedRegion,
  kTopologyUnsupported,
  kDecompositionFailure,
  kNoConvergence,
};

std::string_view to_string(ErrorCode code);

// All solver and parser failures are reported through this type. `nodes`
// carries a witness when one exists: the blocking arc (from, to) for an
// infeasible path, or the node cycle for a negative cycle.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::vector<int> nodes = {});

  ErrorCode code() const { return code_; }
  const std::vector<int>& nodes() const { return nodes_; }

 private:
  ErrorCode code_;
  std::vector<int> nodes_;
};

}  // namespace evroute
