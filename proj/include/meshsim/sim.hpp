#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "meshsim/metrics.hpp"
#include "meshsim/protocols.hpp"
#include "meshsim/scenario.hpp"
#include "meshsim/types.hpp"

namespace meshsim {

struct SimOptions {
  std::optional<ProtocolId> protocol;  // override the scenario's protocol
  std::optional<std::uint64_t> seed;
  std::optional<SimTime> duration;
  std::optional<double> alpha;
  bool record_trace = false;
  std::vector<std::string>* event_log = nullptr;  // kernel-level replay log
};

struct RunResult {
  std::string scenario;
  ProtocolId protocol = ProtocolId::Cdp;
  std::uint64_t seed = 0;
  SimTime duration = 0;
  std::map<FlowId, FlowStats> flows;

  // Invariant instrumentation; all of these stay zero in a correct run.
  long strict_priority_violations = 0;
  long bp_retention_violations = 0;
  long alpha_path_violations = 0;

  // Forwarding bookkeeping.  Under CDP every data hand-off is also scored
  // with the SRCR rule on the same tables (shadow comparison).
  long forwarding_events = 0;
  long srcr_comparable = 0;
  long srcr_agreement = 0;

  long mac_data_attempts = 0;
  long mac_data_success = 0;
  long neighbor_transitions = 0;

  std::map<NodeId, long> control_rx;         // delivered control frames
  std::map<NodeId, double> airtime_fraction;  // own-transmission share
  bool conservation_ok = true;
  std::string trace;  // CSV rows, when requested

  long total_injected(bool include_background = true) const;
  long total_delivered(bool include_background = true) const;
  const FlowStats* flow_by_name(const std::string& name) const;
  std::optional<double> flow_mean_delay_us(const std::string& name) const;
};

// Runs one protocol over one scenario with one seed; fully deterministic.
RunResult run_simulation(const Scenario& scenario, const SimOptions& opt = {});

inline const char* kTraceHeader = "time,flow,seq,event,node,cause\n";

}  // namespace meshsim
