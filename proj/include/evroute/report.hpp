#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "evroute/flow.hpp"
#include "evroute/multi_vehicle.hpp"
#include "evroute/network.hpp"
#include "evroute/single_vehicle.hpp"

namespace evroute {

/// Minimal ordered JSON value for solution documents. Reals are always
/// written with six decimals so output is byte-stable; integers verbatim.
class Doc {
 public:
  struct Real {
    double value;
  };

  Doc() : value_(nullptr) {}
  Doc(Real r) : value_(r) {}
  Doc(int v) : value_(static_cast<long long>(v)) {}
  Doc(long long v) : value_(v) {}
  Doc(unsigned long long v) : value_(static_cast<long long>(v)) {}
  Doc(unsigned long v) : value_(static_cast<long long>(v)) {}
  Doc(bool v) : value_(v) {}
  Doc(const char* v) : value_(std::string(v)) {}
  Doc(std::string v) : value_(std::move(v)) {}

  static Doc object() { return Doc(Members{}); }
  static Doc array() { return Doc(Items{}); }
  static Doc reals(const std::vector<double>& values);
  static Doc ints(const std::vector<int>& values);

  /// Appends a member (objects) and returns *this for chaining.
  Doc& set(const std::string& key, Doc value);
  Doc& push(Doc value);

  std::string dump() const;

 private:
  using Members = std::vector<std::pair<std::string, Doc>>;
  using Items = std::vector<Doc>;
  explicit Doc(Members m) : value_(std::move(m)) {}
  explicit Doc(Items i) : value_(std::move(i)) {}
  void write(std::string& out, int indent) const;
  bool is_scalar() const;

  std::variant<std::nullptr_t, Real, long long, bool, std::string, Members, Items> value_;
};

inline Doc real(double v) { return Doc(Doc::Real{v}); }

/// Six-decimal fixed notation; negative zero prints as 0.
std::string format_real(double v);

Doc to_doc(const RouteSolution& solution);
Doc to_doc(const ChargingPlan& plan, const std::string& method);
Doc to_doc(const MultiResult& result, const std::string& method);
Doc to_doc(const Network& net, const FlowPattern& flow, const FlowChargingState& charging);
Doc to_doc(const ValidationReport& report);

std::string to_table(const RouteSolution& solution);
std::string to_table(const ChargingPlan& plan, const std::string& method);
std::string to_table(const MultiResult& result, const std::string& method);
std::string to_table(const Network& net, const FlowPattern& flow, const FlowChargingState& charging);
std::string to_table(const ValidationReport& report);

/// Graphviz rendering: arcs labelled tau/e/g_i, arcs of `highlight` drawn
/// bold and coloured, with an optional per-arc label suffix (flow values).
std::string to_dot(const Network& net, const std::vector<Path>& highlight,
                   const std::vector<std::string>& arc_notes = {});

}  // namespace evroute
