#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "meshsim/protocols.hpp"
#include "meshsim/topology.hpp"
#include "meshsim/types.hpp"

namespace meshsim {

struct ScenarioError : std::runtime_error {
  explicit ScenarioError(const std::string& msg) : std::runtime_error(msg) {}
  ScenarioError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg) {}
};

struct ScenarioParams {
  SimTime duration = 180 * kSec;
  std::uint64_t seed = 1;
  int packet_size = 512;  // bytes, data and probe packets
  double data_rate_mbps = 48.0;
  double control_rate_mbps = 11.0;
  SimTime mac_overhead = 100 * kUsec;  // fixed per-attempt MAC/ACK overhead
  SimTime beacon_interval = 200 * kMsec;
  SimTime probe_interval = 1 * kSec;
  double gamma = 0.4;
  int buffer_capacity = 500;  // packets, shared per node
  int retry_limit = 7;
  int ttl = 32;
  double background_rate_pps = 0.0;
  double ewma_beta = 0.1;
  bool poison_reverse = true;
};

struct FlowSpec {
  FlowId id = -1;
  std::string name;
  NodeId src = kNoNode;
  NodeId dst = kNoNode;
  double rate_bps = 0.0;
  SimTime start = 0;
  SimTime stop = 0;  // 0 = until duration
  bool background = false;
};

struct LinkChangeSpec {
  SimTime at = 0;
  NodeId src = kNoNode;
  NodeId dst = kNoNode;
  double success_prob = 1.0;
};

struct Scenario {
  std::string name = "unnamed";
  ScenarioParams params;
  Topology topo;
  std::vector<FlowSpec> flows;
  std::vector<LinkChangeSpec> link_changes;
  std::map<NodeId, std::set<NodeId>> cs_override;
  std::map<std::pair<NodeId, NodeId>, std::set<NodeId>> collision_override;
  ProtocolId protocol = ProtocolId::Cdp;
  double alpha = 1.0;
  std::vector<NodeId> alpha_path1;
  std::vector<NodeId> alpha_path2;

  // Airtime of one attempt: payload at the data rate plus fixed overhead.
  SimTime data_airtime() const;
  // Control/probe frames go out at the (lower) control rate.
  SimTime control_airtime(int bytes) const;

  // Defaults with overrides applied.  Carrier-sense overrides are unioned
  // with the link peers so carrier_sense(n) always covers the neighbors.
  InterferenceModel interference() const;

  SimTime flow_stop(const FlowSpec& f) const {
    return f.stop > 0 ? f.stop : params.duration;
  }
};

Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);
std::string serialize_scenario(const Scenario& s);

// Unit-suffixed literal parsing, shared with the CLI.
SimTime parse_time(const std::string& tok);     // 180s / 200ms / 85us / 85
double parse_rate_bps(const std::string& tok);  // 4mbps / 64kbps / 100bps

}  // namespace meshsim
