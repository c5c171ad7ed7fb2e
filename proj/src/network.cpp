#include "evroute/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "evroute/error.hpp"

namespace evroute {

using nlohmann::json;

Network::Network(int node_count, std::vector<Arc> arcs, std::vector<double> g,
                 double capacity, double initial_energy,
                 std::optional<CongestionBlock> congestion)
    : node_count_(node_count),
      arcs_(std::move(arcs)),
      g_(std::move(g)),
      capacity_(capacity),
      initial_energy_(initial_energy),
      congestion_(congestion) {
  if (node_count_ < 1 || static_cast<int>(g_.size()) != node_count_) {
    throw Error(ErrorCode::kSchema, "charge-rate vector must have one entry per node");
  }
  out_.resize(node_count_);
  in_.resize(node_count_);
  for (int k = 0; k < arc_count(); ++k) {
    const Arc& a = arcs_[k];
    if (a.from < 1 || a.from > node_count_ || a.to < 1 || a.to > node_count_) {
      throw Error(ErrorCode::kSchema,
                  "arcs[" + std::to_string(k) + "] references an unknown node");
    }
    out_[a.from - 1].push_back(k);
    in_[a.to - 1].push_back(k);
  }
}

std::vector<NodeId> Network::successors(NodeId i) const {
  std::vector<NodeId> result;
  for (int k : out_arcs(i)) result.push_back(arcs_[k].to);
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

std::vector<NodeId> Network::predecessors(NodeId i) const {
  std::vector<NodeId> result;
  for (int k : in_arcs(i)) result.push_back(arcs_[k].from);
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

std::optional<int> Network::find_arc(NodeId from, NodeId to) const {
  if (from < 1 || from > node_count_) return std::nullopt;
  for (int k : out_arcs(from)) {
    if (arcs_[k].to == to) return k;
  }
  return std::nullopt;
}

std::vector<int> Network::path_arcs(std::span<const NodeId> path) const {
  std::vector<int> result;
  result.reserve(path.size());
  for (std::size_t t = 0; t + 1 < path.size(); ++t) {
    auto k = find_arc(path[t], path[t + 1]);
    if (!k) {
      throw Error(ErrorCode::kInvalidArgument,
                  "no arc " + std::to_string(path[t]) + " -> " + std::to_string(path[t + 1]),
                  {path[t], path[t + 1]});
    }
    result.push_back(*k);
  }
  return result;
}

Network Network::with_capacity(double capacity) const {
  return Network(node_count_, arcs_, g_, capacity, initial_energy_, congestion_);
}

Network Network::with_charge_rates(std::vector<double> g) const {
  return Network(node_count_, arcs_, std::move(g), capacity_, initial_energy_, congestion_);
}

bool ValidationReport::has_error(std::string_view code) const {
  return std::any_of(errors.begin(), errors.end(),
                     [&](const ValidationIssue& i) { return i.code == code; });
}

namespace {

std::pair<int, int> line_and_column(std::string_view text, std::size_t byte) {
  int line = 1;
  int column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kSchema, where + ": " + what);
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<std::string_view> required,
                std::initializer_list<std::string_view> optional) {
  if (!obj.is_object()) schema_error(where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = std::find(required.begin(), required.end(), key) != required.end() ||
                 std::find(optional.begin(), optional.end(), key) != optional.end();
    if (!known) schema_error(where, "unknown field '" + key + "'");
  }
  for (auto key : required) {
    if (!obj.contains(std::string(key))) {
      schema_error(where, "missing field '" + std::string(key) + "'");
    }
  }
}

double number_field(const json& obj, const char* key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number()) schema_error(where + "." + key, "expected a number");
  return v.get<double>();
}

int integer_field(const json& obj, const char* key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number_integer()) schema_error(where + "." + key, "expected an integer");
  return v.get<int>();
}

}  // namespace

Network parse_network(std::string_view text) {
  // Tracks keys per open object so duplicates are rejected rather than
  // silently overwritten.
  std::vector<std::set<std::string>> open_objects;
  std::vector<std::string> duplicates;
  json::parser_callback_t callback = [&](int, json::parse_event_t event, json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start:
        open_objects.emplace_back();
        break;
      case json::parse_event_t::object_end:
        if (!open_objects.empty()) open_objects.pop_back();
        break;
      case json::parse_event_t::key:
        if (!open_objects.empty() && !open_objects.back().insert(parsed.get<std::string>()).second) {
          duplicates.push_back(parsed.get<std::string>());
        }
        break;
      default:
        break;
    }
    return true;
  };

  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), callback);
  } catch (const json::parse_error& e) {
    auto [line, column] = line_and_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorCode::kSyntax, "line " + std::to_string(line) + ", column " +
                                        std::to_string(column) + ": malformed document");
  }
  if (!duplicates.empty()) schema_error("document", "duplicate field '" + duplicates.front() + "'");

  check_keys(doc, "document", {"nodes", "arcs", "B", "E1"}, {"congestion"});

  const json& nodes = doc.at("nodes");
  if (!nodes.is_array()) schema_error("nodes", "expected an array");
  const int n = static_cast<int>(nodes.size());
  if (n == 0) schema_error("nodes", "at least one node required");
  std::vector<double> g(n, 0.0);
  std::vector<bool> seen(n, false);
  for (int k = 0; k < n; ++k) {
    const json& node = nodes[k];
    std::string where = "nodes[" + std::to_string(k) + "]";
    if (!node.is_object()) schema_error(where, "expected an object");
    if (!node.contains("id")) schema_error(where, "missing field 'id'");
    int id = integer_field(node, "id", where);
    if (id < 1 || id > n) {
      schema_error(where, "node id " + std::to_string(id) + " outside 1.." + std::to_string(n));
    }
    where = "node " + std::to_string(id);
    check_keys(node, where, {"id", "g"}, {});
    if (seen[id - 1]) schema_error(where, "duplicate node id");
    seen[id - 1] = true;
    g[id - 1] = number_field(node, "g", where);
  }

  const json& arcs_doc = doc.at("arcs");
  if (!arcs_doc.is_array()) schema_error("arcs", "expected an array");
  std::vector<Arc> arcs;
  arcs.reserve(arcs_doc.size());
  for (std::size_t k = 0; k < arcs_doc.size(); ++k) {
    const json& a = arcs_doc[k];
    std::string where = "arcs[" + std::to_string(k) + "]";
    check_keys(a, where, {"from", "to", "tau", "e"}, {"d"});
    Arc arc;
    arc.from = integer_field(a, "from", where);
    arc.to = integer_field(a, "to", where);
    if (arc.from < 1 || arc.from > n || arc.to < 1 || arc.to > n) {
      schema_error(where, "references an unknown node");
    }
    arc.tau = number_field(a, "tau", where);
    arc.e = number_field(a, "e", where);
    if (a.contains("d")) arc.d = number_field(a, "d", where);
    arcs.push_back(arc);
  }

  double capacity = number_field(doc, "B", "document");
  double initial_energy = number_field(doc, "E1", "document");

  std::optional<CongestionBlock> congestion;
  if (doc.contains("congestion")) {
    const json& c = doc.at("congestion");
    check_keys(c, "congestion", {"v_f", "p", "q", "R", "e_rate"}, {});
    congestion = CongestionBlock{
        .v_f = number_field(c, "v_f", "congestion"),
        .p = number_field(c, "p", "congestion"),
        .q = number_field(c, "q", "congestion"),
        .R = number_field(c, "R", "congestion"),
        .e_rate = number_field(c, "e_rate", "congestion"),
    };
  }
  return Network(n, std::move(arcs), std::move(g), capacity, initial_energy, congestion);
}

Network load_network(const std::string& file_path) {
  std::ifstream in(file_path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open '" + file_path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_network(buffer.str());
}

std::string serialize_network(const Network& net) {
  using ordered = nlohmann::ordered_json;
  ordered doc;
  ordered nodes = ordered::array();
  for (NodeId i = 1; i <= net.node_count(); ++i) {
    ordered node;
    node["id"] = i;
    node["g"] = net.g(i);
    nodes.push_back(std::move(node));
  }
  ordered arcs = ordered::array();
  for (const Arc& a : net.arcs()) {
    ordered arc;
    arc["from"] = a.from;
    arc["to"] = a.to;
    arc["tau"] = a.tau;
    arc["e"] = a.e;
    if (a.d) arc["d"] = *a.d;
    arcs.push_back(std::move(arc));
  }
  doc["nodes"] = std::move(nodes);
  doc["arcs"] = std::move(arcs);
  doc["B"] = net.capacity();
  doc["E1"] = net.initial_energy();
  if (const auto& c = net.congestion()) {
    ordered block;
    block["v_f"] = c->v_f;
    block["p"] = c->p;
    block["q"] = c->q;
    block["R"] = c->R;
    block["e_rate"] = c->e_rate;
    doc["congestion"] = std::move(block);
  }
  return doc.dump(2) + "\n";
}

ValidationReport validate(const Network& net) {
  ValidationReport report;
  auto error = [&](std::string code, std::string message, std::string location) {
    report.errors.push_back({std::move(code), std::move(message), std::move(location)});
  };
  auto warning = [&](std::string code, std::string message, std::string location) {
    report.warnings.push_back({std::move(code), std::move(message), std::move(location)});
  };
  const int n = net.node_count();
  const double capacity = net.capacity();

  if (n < 2) error("node-count", "at least two nodes required", "nodes");
  if (!std::isfinite(capacity) || capacity <= 0.0) {
    error("capacity", "battery capacity B must be positive", "B");
  }
  if (!std::isfinite(net.initial_energy()) || net.initial_energy() < 0.0 ||
      net.initial_energy() > capacity) {
    error("initial-energy", "initial energy must satisfy 0 <= E1 <= B", "E1");
  }
  for (NodeId i = 1; i <= n; ++i) {
    double g = net.g(i);
    std::string where = "node " + std::to_string(i);
    if (!std::isfinite(g) || g < 0.0) error("g-negative", "charge time per unit energy must be >= 0", where);
  }
  if (n >= 1 && net.g(n) != 0.0) {
    error("destination-g", "destination charging rate must be 0", "node " + std::to_string(n));
  }

  std::set<std::pair<NodeId, NodeId>> pairs;
  bool recuperation = false;
  bool missing_distance = false;
  for (int k = 0; k < net.arc_count(); ++k) {
    const Arc& a = net.arc(k);
    std::string where = "arcs[" + std::to_string(k) + "] (" + std::to_string(a.from) + "->" +
                        std::to_string(a.to) + ")";
    if (a.from == a.to) error("self-loop", "self-loops are not allowed", where);
    if (!pairs.insert({a.from, a.to}).second) {
      error("duplicate-arc", "at most one arc per ordered node pair", where);
    }
    if (!std::isfinite(a.tau) || a.tau <= 0.0) error("tau", "travel time must be > 0", where);
    if (!std::isfinite(a.e)) error("energy", "energy must be finite", where);
    // Such an arc only blocks the paths through it; it is fatal when it
    // cuts the destination off (checked with reachability below).
    if (a.e >= capacity) warning("e-capacity", "e < B violated", where);
    if (a.e < 0.0) recuperation = true;
    if (a.d && (!std::isfinite(*a.d) || *a.d < 0.0)) error("distance", "distance must be >= 0", where);
    if (!a.d) missing_distance = true;
    if (a.to == 1) error("origin-incoming", "origin must have no incoming arcs", where);
  }

  if (const auto& c = net.congestion()) {
    if (!(c->v_f > 0.0)) error("congestion", "v_f must be > 0", "congestion.v_f");
    if (!(c->p >= 1.0)) error("congestion", "p must be >= 1", "congestion.p");
    if (!(c->q >= 1.0)) error("congestion", "q must be >= 1", "congestion.q");
    if (!(c->R > 0.0)) error("congestion", "R must be > 0", "congestion.R");
    if (!(c->e_rate >= 0.0)) error("congestion", "e_rate must be >= 0", "congestion.e_rate");
    if (missing_distance) error("distance-missing", "congestion mode requires d on every arc", "arcs");
  }
  if (recuperation) {
    warning("recuperation", "negative arc energy present; reduced costs use K = B - e uncapped", "arcs");
  }

  if (n >= 2) {
    auto reach = [&](bool usable_only) {
      std::vector<bool> reached(n + 1, false);
      std::queue<NodeId> frontier;
      frontier.push(1);
      reached[1] = true;
      while (!frontier.empty()) {
        NodeId i = frontier.front();
        frontier.pop();
        for (int k : net.out_arcs(i)) {
          NodeId j = net.arc(k).to;
          if (usable_only && net.arc(k).e >= capacity) continue;
          if (!reached[j]) {
            reached[j] = true;
            frontier.push(j);
          }
        }
      }
      return reached;
    };
    std::vector<bool> reached = reach(false);
    if (!reached[n]) {
      error("unreachable", "destination unreachable", "node " + std::to_string(n));
    } else {
      if (!reach(true)[n]) {
        error("e-capacity", "e < B violated on every origin-destination path", "node " + std::to_string(n));
      }
      for (NodeId i = 2; i < n; ++i) {
        if (!reached[i]) warning("isolated-node", "node not reachable from the origin", "node " + std::to_string(i));
      }
    }
  }
  return report;
}

void require_valid(const Network& net) {
  ValidationReport report = validate(net);
  if (report.ok()) return;
  std::string message = "invalid network:";
  for (const auto& issue : report.errors) {
    message += " [" + issue.location + "] " + issue.message + ";";
  }
  throw Error(ErrorCode::kInvalidArgument, message);
}

double preset_g(StationClass station_class) {
  switch (station_class) {
    case StationClass::kAcLevel1: return 1.0 / 5.0;
    case StationClass::kAcLevel2: return 1.0 / 62.0;
    case StationClass::kDc: return 1.0 / 300.0;
  }
  return 0.0;
}

double preset_g(std::string_view station_class) {
  if (station_class == "ac_level_1") return preset_g(StationClass::kAcLevel1);
  if (station_class == "ac_level_2") return preset_g(StationClass::kAcLevel2);
  if (station_class == "dc") return preset_g(StationClass::kDc);
  throw Error(ErrorCode::kInvalidArgument, "unknown station class '" + std::string(station_class) + "'");
}

}  // namespace evroute
