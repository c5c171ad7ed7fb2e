#include "evroute/bench.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <utility>

#include "evroute/error.hpp"

namespace evroute {
namespace {

// mt19937_64 is fully specified by the standard; the distributions are not,
// so draws are mapped by hand to keep files identical across toolchains.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  int below(int n) { return std::min(n - 1, static_cast<int>(unit() * n)); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace

GProfile parse_g_profile(const std::string& name) {
  if (name == "uniform") return GProfile::kUniform;
  if (name == "two-tier") return GProfile::kTwoTier;
  if (name == "table1") return GProfile::kTable1;
  throw Error(ErrorCode::kInvalidArgument, "unknown g profile '" + name + "' (uniform, two-tier, table1)");
}

Network bench_generate(const BenchSpec& spec) {
  if (spec.n < 3) throw Error(ErrorCode::kInvalidArgument, "bench needs n >= 3");
  if (!(spec.density > 0.0) || spec.density > 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "density must be in (0, 1]");
  }
  if (!(spec.back_density >= 0.0) || spec.back_density > 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "back density must be in [0, 1]");
  }
  Draw draw(spec.seed);
  const int n = spec.n;
  std::set<std::pair<int, int>> pairs;
  for (int j = 2; j <= n; ++j) pairs.insert({1 + draw.below(j - 1), j});
  for (int i = 1; i < n; ++i) {
    bool leaves = std::any_of(pairs.begin(), pairs.end(), [&](const auto& p) { return p.first == i; });
    if (!leaves) pairs.insert({i, i + 1 + draw.below(n - i)});
  }
  for (int i = 1; i < n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (draw.unit() < spec.density) pairs.insert({i, j});
    }
  }
  if (spec.back_density > 0.0) {
    for (int i = 2; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (draw.unit() < spec.back_density && !pairs.count({i, j})) pairs.insert({j, i});
      }
    }
  }

  std::vector<Arc> arcs;
  double longest = 0.0;
  for (const auto& [i, j] : pairs) {
    double d = 1.0 + draw.below(10);
    longest = std::max(longest, d);
    arcs.push_back({i, j, d, d, d});
  }

  std::vector<double> g(n, 0.0);
  for (int i = 0; i + 1 < n; ++i) {
    switch (spec.profile) {
      case GProfile::kUniform:
        g[i] = 1.0;
        break;
      case GProfile::kTwoTier:
        g[i] = draw.unit() < 0.5 ? 0.1 : 1.0;
        break;
      case GProfile::kTable1: {
        static const StationClass kClasses[] = {StationClass::kAcLevel1, StationClass::kAcLevel2, StationClass::kDc};
        g[i] = preset_g(kClasses[draw.below(3)]);
        break;
      }
    }
  }
  double capacity = std::round(1.5 * longest * 100.0) / 100.0;
  return Network(n, std::move(arcs), std::move(g), capacity, 0.0, CongestionBlock{});
}

}  // namespace evroute
