#include "meshsim/routing.hpp"

#include <algorithm>
#include <cassert>

namespace meshsim {

void NodeRouting::note_probe(NodeId from, int probe_seq, SimTime now,
                             const RoutingConfig& cfg) {
  PeerInfo& p = peers[from];
  p.probe_hits.emplace_back(probe_seq, now);
  p.max_probe_seq = std::max(p.max_probe_seq, probe_seq);
  p.last_heard = now;
  const SimTime window = cfg.ratio_window * cfg.probe_interval;
  while (!p.probe_hits.empty() && p.probe_hits.front().second + window < now) {
    p.probe_hits.pop_front();
  }
}

void NodeRouting::refresh_neighbors(SimTime now, const RoutingConfig& cfg) {
  // Probes fire once per interval per node (phase < interval), so by time
  // `now` every node has emitted about now/interval + 1 of them.
  const long ticks = static_cast<long>(now / cfg.probe_interval) + 1;
  const long expected =
      std::max(1L, std::min<long>(cfg.ratio_window, ticks));
  const SimTime window = cfg.ratio_window * cfg.probe_interval;
  for (auto& [id, p] : peers) {
    while (!p.probe_hits.empty() &&
           p.probe_hits.front().second + window < now) {
      p.probe_hits.pop_front();
    }
    p.delivery_ratio =
        static_cast<double>(p.probe_hits.size()) / static_cast<double>(expected);
    if (p.delivery_ratio > 1.0) p.delivery_ratio = 1.0;
    const bool was = p.is_neighbor;
    if (!p.ever_rated) {
      p.is_neighbor = p.delivery_ratio >= cfg.gamma;
      p.ever_rated = true;
    } else if (p.delivery_ratio >= cfg.gamma + cfg.hysteresis) {
      p.is_neighbor = true;
    } else if (p.delivery_ratio < cfg.gamma - cfg.hysteresis) {
      p.is_neighbor = false;
    }
    // else: inside the hysteresis band, keep the previous state.
    if (p.is_neighbor != was) ++neighbor_transitions;
  }
}

void NodeRouting::store_control(const ControlFrame& frame, SimTime now) {
  PeerInfo& p = peers[frame.origin];
  p.last_heard = now;
  if (!p.is_neighbor) return;  // may promote later once the ratio clears gamma
  for (const ControlEntry& e : frame.entries) {
    known_dests.insert(e.dest);
    Measure v = e.measure;
    if (e.poisoned_toward == self) v = kInfMeasure;
    adv[frame.origin][e.dest] = MeasureEntry{v, now};
    adv_etx[frame.origin][e.dest] = MeasureEntry{e.etx, now};
  }
}

std::set<NodeId> NodeRouting::neighbor_ids() const {
  std::set<NodeId> out;
  for (const auto& [id, p] : peers) {
    if (p.is_neighbor) out.insert(id);
  }
  return out;
}

Measure NodeRouting::adv_measure(NodeId k, NodeId d, SimTime now,
                                 const RoutingConfig& cfg) const {
  if (k == d) return 0;  // destination anchor: V^d(d) = 0
  auto kit = adv.find(k);
  if (kit == adv.end()) return kInfMeasure;
  auto dit = kit->second.find(d);
  if (dit == kit->second.end()) return kInfMeasure;
  if (dit->second.received_at + cfg.staleness_horizon() < now) {
    return kInfMeasure;
  }
  return dit->second.value;
}

Measure NodeRouting::advertised_etx(NodeId k, NodeId d, SimTime now,
                                    const RoutingConfig& cfg) const {
  if (k == d) return 0;
  auto kit = adv_etx.find(k);
  if (kit == adv_etx.end()) return kInfMeasure;
  auto dit = kit->second.find(d);
  if (dit == kit->second.end()) return kInfMeasure;
  if (dit->second.received_at + cfg.staleness_horizon() < now) {
    return kInfMeasure;
  }
  return dit->second.value;
}

std::vector<NeighborState> NodeRouting::neighbor_states(
    NodeId d, SimTime now, const RoutingConfig& cfg) const {
  std::vector<NeighborState> out;
  for (const auto& [id, p] : peers) {  // std::map: ascending id
    if (!p.is_neighbor || !p.west.has_sample()) continue;
    NeighborState s;
    s.id = id;
    s.w = p.west.value();
    s.v_adv = adv_measure(id, d, now, cfg);
    s.etx_adv = advertised_etx(id, d, now, cfg);
    out.push_back(s);
  }
  return out;
}

std::pair<Measure, NodeId> NodeRouting::compute_etx(
    NodeId d, SimTime now, const RoutingConfig& cfg) const {
  if (d == self) return {0, kNoNode};
  Measure best = kInfMeasure;
  NodeId via = kNoNode;
  for (const NeighborState& k : neighbor_states(d, now, cfg)) {
    Measure c = measure_add(k.etx_adv, k.w);
    if (c < best) {
      best = c;
      via = k.id;
    }
  }
  return {best, via};
}

namespace {

std::vector<std::pair<NodeId, SimTime>> out_links(const Topology& topo,
                                                  const WMatrix& w, NodeId n) {
  std::vector<std::pair<NodeId, SimTime>> out;
  for (NodeId j : topo.peers(n)) {
    auto it = w.find({n, j});
    if (it != w.end() && it->second > 0) out.emplace_back(j, it->second);
  }
  return out;
}

}  // namespace

MeasureGrid converge_etx(const Topology& topo, const WMatrix& w,
                         int max_rounds) {
  MeasureGrid v;
  for (NodeId n : topo.nodes()) {
    for (NodeId d : topo.nodes()) v[n][d] = (n == d) ? 0 : kInfMeasure;
  }
  for (int round = 0; round < max_rounds; ++round) {
    bool changed = false;
    MeasureGrid next = v;
    for (NodeId n : topo.nodes()) {
      for (NodeId d : topo.nodes()) {
        if (n == d) continue;
        Measure best = kInfMeasure;
        for (const auto& [j, wj] : out_links(topo, w, n)) {
          best = std::min(best, measure_add(v[j][d], wj));
        }
        if (best != next[n][d]) {
          next[n][d] = best;
          changed = true;
        }
      }
    }
    v = std::move(next);
    if (!changed) break;
  }
  return v;
}

MeasureGrid converge_cdp_unit(const Topology& topo, const WMatrix& w,
                              int max_rounds) {
  MeasureGrid v;
  for (NodeId n : topo.nodes()) {
    for (NodeId d : topo.nodes()) v[n][d] = (n == d) ? 0 : kInfMeasure;
  }
  for (int round = 0; round < max_rounds; ++round) {
    bool changed = false;
    MeasureGrid next = v;
    for (NodeId n : topo.nodes()) {
      for (NodeId d : topo.nodes()) {
        if (n == d) continue;
        std::vector<NeighborState> states;
        for (const auto& [j, wj] : out_links(topo, w, n)) {
          states.push_back(NeighborState{j, wj, v[j][d], kInfMeasure});
        }
        Decision dec = cdp_next_hop(states);
        Measure m = kInfMeasure;
        if (dec.transmit) {
          SimTime w_next = 0;
          Measure v_next = kInfMeasure;
          for (const NeighborState& s : states) {
            if (s.id == dec.next_hop) {
              w_next = s.w;
              v_next = s.v_adv;
            }
          }
          m = cdp_measure(w_next, v_next, {});
        }
        if (m != next[n][d]) {
          next[n][d] = m;
          changed = true;
        }
      }
    }
    v = std::move(next);
    if (!changed) break;
  }
  return v;
}

}  // namespace meshsim
