#include "evroute/congestion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "evroute/error.hpp"

namespace evroute {

CongestionParams CongestionParams::from(const Network& net, int N) {
  if (!net.congestion()) {
    throw Error(ErrorCode::kInvalidArgument, "instance has no congestion block");
  }
  const CongestionBlock& c = *net.congestion();
  CongestionParams params{c.v_f, c.p, c.q, c.R, N, c.e_rate};
  params.check();
  return params;
}

void CongestionParams::check() const {
  if (!(v_f > 0.0)) throw Error(ErrorCode::kInvalidArgument, "v_f must be > 0");
  if (!(p >= 1.0) || !(q >= 1.0)) throw Error(ErrorCode::kInvalidArgument, "p and q must be >= 1");
  if (!(R > 0.0)) throw Error(ErrorCode::kInvalidArgument, "R must be > 0");
  if (N < 1) throw Error(ErrorCode::kInvalidArgument, "N must be >= 1");
  if (!(e_rate >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "e_rate must be >= 0");
}

SubflowParams SubflowParams::even_split(const Network& net, int N) {
  if (N < 1) throw Error(ErrorCode::kInvalidArgument, "N must be >= 1");
  return {net.capacity() / N, net.initial_energy() / N};
}

double speed(double density, const CongestionParams& params) {
  if (!(density >= 0.0) || density > params.k_jam()) {
    throw Error(ErrorCode::kInvalidArgument,
                "density " + std::to_string(density) + " outside [0, " + std::to_string(params.N) + "]");
  }
  return params.v_f * std::pow(1.0 - std::pow(density / params.k_jam(), params.p), params.q);
}

double clamped_speed(double load_ratio, const CongestionParams& params) {
  double y = std::clamp(load_ratio, 0.0, 1.0);
  double v = params.v_f * std::pow(1.0 - std::pow(y, params.p), params.q);
  return std::max(v, params.speed_floor());
}

double subflow_travel_time(std::span<const double> x, int k, double d, const CongestionParams& params) {
  if (k < 0 || static_cast<std::size_t>(k) >= x.size()) {
    throw Error(ErrorCode::kInvalidArgument, "subflow index out of range");
  }
  if (x[k] == 0.0) return 0.0;
  double load = 0.0;
  for (double v : x) load += v;
  return d * x[k] * params.R / params.N / clamped_speed(load / params.N, params);
}

double arc_travel_time(int count, double d, const CongestionParams& params) {
  if (count == 0) return 0.0;
  return count * d * params.R / params.N / clamped_speed(static_cast<double>(count) / params.N, params);
}

double subflow_energy(double d, const CongestionParams& params) {
  return params.e_rate * d * params.R / params.N;
}

}  // namespace evroute
