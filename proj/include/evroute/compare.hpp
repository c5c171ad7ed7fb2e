#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evroute/flow.hpp"
#include "evroute/multi_vehicle.hpp"
#include "evroute/report.hpp"

namespace evroute {

struct CompareRow {
  int N = 0;
  std::optional<MultiResult> p4;
  std::optional<MultiResult> p5;
  std::string p4_error;
  std::string p5_error;
  double p4_seconds = 0.0;
  double p5_seconds = 0.0;
};

struct CompareReport {
  std::vector<CompareRow> rows;
  std::optional<FlowPattern> flow;
  std::string flow_error;
  double flow_seconds = 0.0;

  /// Smallest objective any method reached (p4, p5 primal, flow).
  std::optional<double> best() const;
  /// Smallest p4 objective over the N series.
  std::optional<double> best_p4() const;
};

/// Runs p4, p5 and the flow relaxation for every N. Solver failures are
/// recorded per row rather than thrown.
CompareReport run_compare(const Network& net, const std::vector<int>& Ns, double tol, int threads,
                          std::uint64_t budget);

/// Deterministic fields first; wall times go under "timing".
Doc to_doc(const CompareReport& report);
std::string to_table(const CompareReport& report);

}  // namespace evroute
