#pragma once

#include <deque>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "meshsim/mac.hpp"
#include "meshsim/packet.hpp"
#include "meshsim/protocols.hpp"
#include "meshsim/topology.hpp"
#include "meshsim/types.hpp"

namespace meshsim {

struct RoutingConfig {
  SimTime beacon_interval = 200 * kMsec;  // T
  SimTime probe_interval = 1 * kSec;
  double gamma = 0.4;
  double hysteresis = 0.05;
  int ratio_window = 20;  // probes remembered for the delivery ratio
  double ewma_beta = 0.1;
  bool poison_reverse = true;  // CDP only

  SimTime staleness_horizon() const { return 5 * beacon_interval; }
};

// Per-peer link state: discovery-probe delivery ratio, W estimate, beacon
// freshness.  A peer is a neighbor iff its delivery ratio clears gamma,
// with a +-hysteresis band to stop flapping.
struct PeerInfo {
  std::deque<std::pair<int, SimTime>> probe_hits;  // (probe seq, recv time)
  int max_probe_seq = -1;
  bool is_neighbor = false;
  bool ever_rated = false;
  double delivery_ratio = 0.0;
  LinkEstimate west;
  SimTime last_heard = 0;
};

struct MeasureEntry {
  Measure value = kInfMeasure;
  SimTime received_at = 0;
};

// Control-plane state for one node.
class NodeRouting {
 public:
  NodeId self = kNoNode;
  std::map<NodeId, PeerInfo> peers;
  // adv[k][d]: latest congestion measure advertised by k for destination d;
  // adv_etx likewise for the ETX field carried in every beacon.
  std::map<NodeId, std::map<NodeId, MeasureEntry>> adv;
  std::map<NodeId, std::map<NodeId, MeasureEntry>> adv_etx;
  std::set<NodeId> known_dests;

  // Cached own values, refreshed on recompute/beacon.
  std::map<NodeId, NodeId> next_hop;  // K^{(n,d)}
  std::map<NodeId, Measure> etx;      // Eq-4 fixed point value at n

  long neighbor_transitions = 0;  // status flips after the initial rating

  void note_probe(NodeId from, int probe_seq, SimTime now,
                  const RoutingConfig& cfg);
  // Recomputes delivery ratios and neighbor status for every peer.
  void refresh_neighbors(SimTime now, const RoutingConfig& cfg);

  // Stores the entries of a received beacon.  Entries from peers that are
  // not currently neighbors only refresh last_heard.
  void store_control(const ControlFrame& frame, SimTime now);

  std::set<NodeId> neighbor_ids() const;

  // Staleness-gated lookups (entries older than 5T read as +inf).
  Measure adv_measure(NodeId k, NodeId d, SimTime now,
                      const RoutingConfig& cfg) const;
  Measure advertised_etx(NodeId k, NodeId d, SimTime now,
                         const RoutingConfig& cfg) const;

  // Neighbors with a usable W estimate, assembled for a next-hop decision
  // toward d.  The destination anchor (k == d) reads as measure 0.
  std::vector<NeighborState> neighbor_states(NodeId d, SimTime now,
                                             const RoutingConfig& cfg) const;

  // Eq-4 recursion step from the advertised ETX values.
  std::pair<Measure, NodeId> compute_etx(NodeId d, SimTime now,
                                         const RoutingConfig& cfg) const;
};

// Synchronous fixed-point drivers over a static W matrix (no simulation).
// These express the repeated-beacon-round convergence of the distance
// recursions and back the oracle-equivalence tests.
using WMatrix = std::map<std::pair<NodeId, NodeId>, SimTime>;
using MeasureGrid = std::map<NodeId, std::map<NodeId, Measure>>;

// ETX(n,d) = min_j ETX(j,d) + W(n,j), anchored at ETX(d,d) = 0.
MeasureGrid converge_etx(const Topology& topo, const WMatrix& w,
                         int max_rounds = 64);

// CDP measure fixed point with every queue term frozen at the single
// packet being routed (unit-queue form), via the cdp_measure/cdp_next_hop
// code path.
MeasureGrid converge_cdp_unit(const Topology& topo, const WMatrix& w,
                              int max_rounds = 64);

}  // namespace meshsim
