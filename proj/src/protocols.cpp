#include "meshsim/protocols.hpp"

#include <cassert>
#include <string_view>

namespace meshsim {

const char* to_string(ProtocolId p) {
  switch (p) {
    case ProtocolId::Srcr: return "srcr";
    case ProtocolId::Bp: return "bp";
    case ProtocolId::Ebp: return "ebp";
    case ProtocolId::Cdp: return "cdp";
    case ProtocolId::AlphaSplit: return "alpha";
  }
  return "?";
}

std::optional<ProtocolId> protocol_from_string(std::string_view s) {
  if (s == "srcr") return ProtocolId::Srcr;
  if (s == "bp") return ProtocolId::Bp;
  if (s == "ebp") return ProtocolId::Ebp;
  if (s == "cdp") return ProtocolId::Cdp;
  if (s == "alpha") return ProtocolId::AlphaSplit;
  return std::nullopt;
}

bool score_less(const Score& a, const Score& b) {
  if (a.inf || b.inf) return !a.inf && b.inf;
  assert(a.den > 0 && b.den > 0);
  return static_cast<__int128>(a.num) * b.den <
         static_cast<__int128>(b.num) * a.den;
}

bool score_eq(const Score& a, const Score& b) {
  if (a.inf || b.inf) return a.inf == b.inf;
  return static_cast<__int128>(a.num) * b.den ==
         static_cast<__int128>(b.num) * a.den;
}

namespace {

// Generic argmin over neighbors; neighbors are visited in ascending id
// order, so strict improvement implements the lowest-id tie-break.
template <typename ScoreFn>
Decision argmin(std::span<const NeighborState> neigh, ScoreFn&& fn) {
  Decision best;
  for (const NeighborState& k : neigh) {
    assert(k.w > 0);
    Score s = fn(k);
    if (score_less(s, best.score)) {
      best.next_hop = k.id;
      best.score = s;
    }
  }
  return best;
}

template <typename ScoreFn>
std::vector<NodeId> argmin_set(std::span<const NeighborState> neigh,
                               ScoreFn&& fn) {
  Score best = Score::infinity();
  std::vector<NodeId> out;
  for (const NeighborState& k : neigh) {
    Score s = fn(k);
    if (s.inf) continue;
    if (score_less(s, best)) {
      best = s;
      out.clear();
      out.push_back(k.id);
    } else if (score_eq(s, best)) {
      out.push_back(k.id);
    }
  }
  return out;
}

Score bp_score(const NeighborState& k, Measure own_v) {
  if (k.v_adv == kInfMeasure || own_v == kInfMeasure) return Score::infinity();
  return Score::ratio(k.v_adv - own_v, k.w);
}

Score ebp_score(const NeighborState& k, Measure own_v) {
  if (k.v_adv == kInfMeasure || own_v == kInfMeasure ||
      k.etx_adv == kInfMeasure) {
    return Score::infinity();
  }
  // ETX + diff/W over the common denominator W.
  return Score::ratio(k.etx_adv * k.w + (k.v_adv - own_v), k.w);
}

Score cdp_score(const NeighborState& k) {
  if (k.v_adv == kInfMeasure) return Score::infinity();
  return Score::of(measure_add(k.w, k.v_adv));
}

Score srcr_score(const NeighborState& k) {
  if (k.etx_adv == kInfMeasure) return Score::infinity();
  return Score::of(measure_add(k.etx_adv, k.w));
}

}  // namespace

Decision bp_next_hop(std::span<const NeighborState> neigh, Measure own_v) {
  Decision d = argmin(neigh, [&](const NeighborState& k) {
    return bp_score(k, own_v);
  });
  d.transmit = d.next_hop != kNoNode && d.score.negative();
  return d;
}

Decision ebp_next_hop(std::span<const NeighborState> neigh, Measure own_v) {
  Decision d = argmin(neigh, [&](const NeighborState& k) {
    return ebp_score(k, own_v);
  });
  d.transmit = d.next_hop != kNoNode;
  return d;
}

Decision cdp_next_hop(std::span<const NeighborState> neigh) {
  Decision d = argmin(neigh, cdp_score);
  d.transmit = d.next_hop != kNoNode;
  return d;
}

Decision srcr_next_hop(std::span<const NeighborState> neigh) {
  Decision d = argmin(neigh, srcr_score);
  d.transmit = d.next_hop != kNoNode;
  return d;
}

std::vector<NodeId> cdp_argmin_set(std::span<const NeighborState> neigh) {
  return argmin_set(neigh, cdp_score);
}

std::vector<NodeId> srcr_argmin_set(std::span<const NeighborState> neigh) {
  return argmin_set(neigh, srcr_score);
}

Measure cdp_measure(SimTime w_next, Measure v_adv_next,
                    std::span<const std::pair<long, SimTime>> queue_terms) {
  if (v_adv_next == kInfMeasure) return kInfMeasure;
  Measure drain = w_next;
  for (const auto& [count, w] : queue_terms) {
    drain = measure_add(drain, static_cast<Measure>(count) * w);
  }
  return measure_add(drain, v_adv_next);
}

FlowChoice pick_flow(const std::map<NodeId, Decision>& per_dest) {
  FlowChoice best;
  for (const auto& [dest, dec] : per_dest) {
    if (dec.next_hop == kNoNode) continue;
    if (best.dest == kNoNode || score_less(dec.score, best.decision.score)) {
      best.dest = dest;
      best.decision = dec;
    }
  }
  return best;
}

std::optional<NodeId> alpha_split_next_hop(std::span<const NodeId> path,
                                           NodeId self) {
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (path[i] == self) return path[i + 1];
  }
  return std::nullopt;
}

}  // namespace meshsim
