#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace evroute {

/// Node ids are dense and 1-based: 1 is the origin, node_count() the destination.
using NodeId = int;
using Path = std::vector<NodeId>;

/// Comparison tolerance used wherever an invariant says "equals".
inline constexpr double kEps = 1e-9;

struct Arc {
  NodeId from = 0;
  NodeId to = 0;
  double tau = 0.0;  // travel time
  double e = 0.0;    // energy consumption, negative under recuperation
  std::optional<double> d;  // distance, required by the congestion model
};

/// Parameters of the optional `congestion` block of an instance file.
struct CongestionBlock {
  double v_f = 1.0;
  double p = 2.0;
  double q = 2.0;
  double R = 1.0;
  double e_rate = 1.0;
};

/// Immutable network value. Construction only checks that arc endpoints are
/// in range so adjacency can be built; every other invariant is reported by
/// validate().
class Network {
 public:
  Network(int node_count, std::vector<Arc> arcs, std::vector<double> g,
          double capacity, double initial_energy,
          std::optional<CongestionBlock> congestion = std::nullopt);

  int node_count() const { return node_count_; }
  NodeId origin() const { return 1; }
  NodeId destination() const { return node_count_; }

  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(int index) const { return arcs_[index]; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }

  /// Charge time per unit energy at node i.
  double g(NodeId i) const { return g_[i - 1]; }
  const std::vector<double>& charge_rates() const { return g_; }

  double capacity() const { return capacity_; }
  double initial_energy() const { return initial_energy_; }
  const std::optional<CongestionBlock>& congestion() const { return congestion_; }

  /// Arc indices leaving / entering node i, in insertion order.
  std::span<const int> out_arcs(NodeId i) const { return out_[i - 1]; }
  std::span<const int> in_arcs(NodeId i) const { return in_[i - 1]; }

  /// O(i) and I(i) as sorted node-id lists.
  std::vector<NodeId> successors(NodeId i) const;
  std::vector<NodeId> predecessors(NodeId i) const;

  /// Index of the first arc i -> j, if any.
  std::optional<int> find_arc(NodeId from, NodeId to) const;

  /// Arc indices along a node sequence; throws if two consecutive nodes are
  /// not connected.
  std::vector<int> path_arcs(std::span<const NodeId> path) const;

  Network with_capacity(double capacity) const;
  Network with_charge_rates(std::vector<double> g) const;

 private:
  int node_count_;
  std::vector<Arc> arcs_;
  std::vector<double> g_;
  double capacity_;
  double initial_energy_;
  std::optional<CongestionBlock> congestion_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

struct ValidationIssue {
  std::string code;
  std::string message;
  std::string location;
};

struct ValidationReport {
  std::vector<ValidationIssue> errors;
  std::vector<ValidationIssue> warnings;

  bool ok() const { return errors.empty(); }
  bool has_error(std::string_view code) const;
};

/// Parses an instance document. Throws Error{kSyntax} with line/column for
/// malformed JSON and Error{kSchema} naming the offending field otherwise.
Network parse_network(std::string_view text);
Network load_network(const std::string& file_path);

/// Inverse of parse_network: keys in schema order, two-space indentation,
/// shortest round-trip number formatting.
std::string serialize_network(const Network& net);

ValidationReport validate(const Network& net);

/// Throws Error{kInvalidArgument} listing every validation error.
void require_valid(const Network& net);

enum class StationClass { kAcLevel1, kAcLevel2, kDc };

/// Hours of charging per mile of range for the three SAE station classes.
/// AC level 1's "< 5 miles per hour" is taken as exactly 5.
double preset_g(StationClass station_class);
double preset_g(std::string_view station_class);

}  // namespace evroute
