#include "meshsim/topology.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace meshsim {

void Topology::add_node(NodeId n) {
  if (has_node(n)) return;
  nodes_.push_back(n);
  std::sort(nodes_.begin(), nodes_.end());
  adj_[n];
}

void Topology::add_link(Link l) {
  if (!has_node(l.src) || !has_node(l.dst)) {
    throw std::invalid_argument("link references unknown node");
  }
  if (l.src == l.dst) throw std::invalid_argument("self link");
  links_[{l.src, l.dst}] = l;
  adj_[l.src].insert(l.dst);
  adj_[l.dst].insert(l.src);
}

bool Topology::has_node(NodeId n) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), n);
}

bool Topology::has_link(NodeId src, NodeId dst) const {
  return links_.count({src, dst}) > 0;
}

const Link& Topology::link(NodeId src, NodeId dst) const {
  auto it = links_.find({src, dst});
  if (it == links_.end()) throw std::out_of_range("no such link");
  return it->second;
}

Link& Topology::link_mut(NodeId src, NodeId dst) {
  auto it = links_.find({src, dst});
  if (it == links_.end()) throw std::out_of_range("no such link");
  return it->second;
}

const std::set<NodeId>& Topology::peers(NodeId n) const {
  static const std::set<NodeId> kEmpty;
  auto it = adj_.find(n);
  return it == adj_.end() ? kEmpty : it->second;
}

int Topology::hop_distance(NodeId from, NodeId to) const {
  if (from == to) return 0;
  std::map<NodeId, int> dist;
  std::deque<NodeId> q{from};
  dist[from] = 0;
  while (!q.empty()) {
    NodeId u = q.front();
    q.pop_front();
    for (NodeId v : peers(u)) {
      if (dist.count(v)) continue;
      dist[v] = dist[u] + 1;
      if (v == to) return dist[v];
      q.push_back(v);
    }
  }
  return -1;
}

bool Topology::connected() const {
  if (nodes_.empty()) return true;
  int reached = 0;
  for (NodeId n : nodes_) {
    if (hop_distance(nodes_.front(), n) >= 0) ++reached;
  }
  return reached == static_cast<int>(nodes_.size());
}

InterferenceModel InterferenceModel::defaults(const Topology& topo) {
  InterferenceModel m;
  for (NodeId n : topo.nodes()) {
    m.carrier_sense[n] = topo.peers(n);
  }
  for (const auto& [key, link] : topo.links()) {
    std::set<NodeId> ball;
    for (NodeId other : topo.nodes()) {
      if (other == link.src || other == link.dst) continue;
      int d = topo.hop_distance(other, link.dst);
      if (d >= 0 && d <= 2) ball.insert(other);
    }
    m.collision[key] = std::move(ball);
  }
  return m;
}

const std::set<NodeId>& InterferenceModel::cs_of(NodeId n) const {
  static const std::set<NodeId> kEmpty;
  auto it = carrier_sense.find(n);
  return it == carrier_sense.end() ? kEmpty : it->second;
}

const std::set<NodeId>& InterferenceModel::collision_of(NodeId src,
                                                        NodeId dst) const {
  static const std::set<NodeId> kEmpty;
  auto it = collision.find({src, dst});
  return it == collision.end() ? kEmpty : it->second;
}

}  // namespace meshsim
