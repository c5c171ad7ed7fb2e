#pragma once

#include <span>

#include "evroute/network.hpp"

namespace evroute {

/// Speed-density law v_f (1 - (k/k_jam)^p)^q with k_jam = N, plus the flow
/// split R/N shared by all subflows.
struct CongestionParams {
  double v_f = 1.0;
  double p = 2.0;
  double q = 2.0;
  double R = 1.0;
  int N = 1;
  double e_rate = 1.0;

  /// Reads the instance's congestion block; throws Error{kInvalidArgument}
  /// when the instance has none.
  static CongestionParams from(const Network& net, int N);

  double k_jam() const { return static_cast<double>(N); }
  /// Denominator floor that keeps jam-density travel times finite.
  double speed_floor() const { return 1e-6 * v_f; }

  /// Throws Error{kInvalidArgument} on v_f <= 0, p or q < 1, R <= 0, N < 1
  /// or e_rate < 0.
  void check() const;
};

/// Per-subflow battery data.
struct SubflowParams {
  double capacity = 0.0;
  double initial_energy = 0.0;

  /// B/N and E1/N.
  static SubflowParams even_split(const Network& net, int N);
};

/// Throws Error{kInvalidArgument} for density outside [0, k_jam].
double speed(double density, const CongestionParams& params);

/// max(v_f (1 - y^p)^q, speed_floor) for the load ratio y = density/k_jam.
double clamped_speed(double load_ratio, const CongestionParams& params);

/// Time charged to subflow k (0-based) on an arc of distance d, given every
/// subflow's indicator or fraction on that arc.
double subflow_travel_time(std::span<const double> x, int k, double d, const CongestionParams& params);

/// Total time of `count` subflows sharing an arc of distance d.
double arc_travel_time(int count, double d, const CongestionParams& params);

/// e_rate * d * R / N.
double subflow_energy(double d, const CongestionParams& params);

}  // namespace evroute
