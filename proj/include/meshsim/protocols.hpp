#pragma once

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "meshsim/types.hpp"

namespace meshsim {

enum class ProtocolId { Srcr, Bp, Ebp, Cdp, AlphaSplit };

const char* to_string(ProtocolId p);
std::optional<ProtocolId> protocol_from_string(std::string_view s);

// Exact rational score used for next-hop/flow argmins.  Weighted queue
// differentials are ratios of integers; comparing them exactly keeps
// tie-breaks deterministic.
struct Score {
  std::int64_t num = 0;
  std::int64_t den = 1;  // > 0
  bool inf = false;

  static Score infinity() { return Score{0, 1, true}; }
  static Score of(std::int64_t v) { return Score{v, 1, false}; }
  static Score ratio(std::int64_t num, std::int64_t den) {
    return Score{num, den, false};
  }

  bool negative() const { return !inf && num < 0; }
};

bool score_less(const Score& a, const Score& b);
bool score_eq(const Score& a, const Score& b);

// Everything a next-hop rule may consult about one neighbor, as known at
// the deciding node: the local W estimate plus the last advertised values.
struct NeighborState {
  NodeId id = kNoNode;
  SimTime w = 0;                  // W(n,k) in microseconds, > 0
  Measure v_adv = kInfMeasure;    // advertised congestion measure
  Measure etx_adv = kInfMeasure;  // advertised ETX^{(k,d)}
};

struct Decision {
  NodeId next_hop = kNoNode;
  Score score = Score::infinity();
  bool transmit = false;  // retention rule already applied
};

// BP: argmin_k (1/W)(Vtilde - V); retain unless the best differential is
// negative.
Decision bp_next_hop(std::span<const NeighborState> neigh, Measure own_v);

// E-BP: argmin_k ETX(k,d) + (1/W)(Vtilde - V); transmits on any finite
// score (the ETX term keeps scores positive even at zero load).
Decision ebp_next_hop(std::span<const NeighborState> neigh, Measure own_v);

// CDP: argmin_k W(n,k) + Vtilde(k).
Decision cdp_next_hop(std::span<const NeighborState> neigh);

// SRCR: argmin_k ETX(k,d) + W(n,k).
Decision srcr_next_hop(std::span<const NeighborState> neigh);

// Full minimizer sets (for degeneracy checks); empty when all infinite.
std::vector<NodeId> cdp_argmin_set(std::span<const NeighborState> neigh);
std::vector<NodeId> srcr_argmin_set(std::span<const NeighborState> neigh);

// Local draining time plus downstream measure: W(n,K_d) + sum_j q_j *
// W(n,K_j) + Vtilde(K_d).  queue_terms holds (q_j, W(n,K_j)) for every
// destination currently queued; pass an empty span for the unit-queue
// (ETX-degenerate) form.
Measure cdp_measure(SimTime w_next, Measure v_adv_next,
                    std::span<const std::pair<long, SimTime>> queue_terms);

// Flow selection: argmin over destinations of the per-destination best
// score; ties go to the lowest destination id.
struct FlowChoice {
  NodeId dest = kNoNode;
  Decision decision;
};
FlowChoice pick_flow(const std::map<NodeId, Decision>& per_dest);

// AlphaSplit: successor of `self` on the tagged path, or nullopt when the
// node is not on the path (an invariant violation for pinned routes).
std::optional<NodeId> alpha_split_next_hop(std::span<const NodeId> path,
                                           NodeId self);

}  // namespace meshsim
