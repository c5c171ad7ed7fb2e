#pragma once

#include <cstdint>
#include <string>

#include "evroute/network.hpp"

namespace evroute {

enum class GProfile { kUniform, kTwoTier, kTable1 };

/// "uniform", "two-tier" or "table1"; throws Error{kInvalidArgument} otherwise.
GProfile parse_g_profile(const std::string& name);

struct BenchSpec {
  std::uint64_t seed = 1;
  int n = 10;
  double density = 0.5;
  GProfile profile = GProfile::kTwoTier;
  /// Probability of a reverse arc j -> i between intermediate nodes.
  double back_density = 0.0;
};

/// Random connected instance: arcs i -> j (i < j) so that every node is
/// entered and left, extra forward arcs with probability `density`, and
/// tau = e = d with integer d in [1, 10]. B is 1.5 times the longest arc,
/// E1 = 0, g follows the profile (uniform: every g = 1; two-tier: 0.1 or 1;
/// table1: station presets) with g = 0 at the destination. Output depends
/// on the seed only.
/// Throws Error{kInvalidArgument} for n < 3 or density outside (0, 1].
Network bench_generate(const BenchSpec& spec);

}  // namespace evroute
