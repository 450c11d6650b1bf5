#pragma once

#include <string>
#include <vector>

#include "meshsim/types.hpp"

namespace meshsim {

enum class DropCause { Overflow, Retry, Loop };

const char* to_string(DropCause c);

// Data unit. Active link probes reuse the same shape with cls = Probe;
// they never enter the flow ledger.
enum class PacketClass { Data, Probe };

struct Packet {
  FlowId flow = -1;
  int seq = 0;
  int ttl = 0;
  SimTime created_at = 0;
  NodeId src = kNoNode;
  NodeId dst = kNoNode;
  int size = 512;         // bytes
  int path_tag = 0;       // AlphaSplit: 1 or 2; 0 otherwise
  int hops = 0;           // completed transmissions
  PacketClass cls = PacketClass::Data;
};

// One advertised routing entry.  poisoned_toward carries the split-horizon
// target: the receiver named there must treat the measure as +inf.
struct ControlEntry {
  NodeId dest = kNoNode;
  Measure measure = kInfMeasure;
  Measure etx = kInfMeasure;
  NodeId poisoned_toward = kNoNode;
};

// Broadcast control-plane frame: either a congestion-measure beacon or a
// neighbor-discovery probe.
struct ControlFrame {
  NodeId origin = kNoNode;
  int seq = 0;
  bool is_probe = false;
  std::vector<ControlEntry> entries;
  int size_bytes = 0;
};

}  // namespace meshsim
