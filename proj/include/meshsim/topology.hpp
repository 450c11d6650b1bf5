#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "meshsim/types.hpp"

namespace meshsim {

struct Link {
  NodeId src = kNoNode;
  NodeId dst = kNoNode;
  double success_prob = 1.0;  // per unicast attempt
  SimTime base_airtime = 0;   // one data-size attempt incl. fixed MAC overhead
};

class Topology {
 public:
  void add_node(NodeId n);
  void add_link(Link l);  // directed; add both directions for a duplex link

  bool has_node(NodeId n) const;
  bool has_link(NodeId src, NodeId dst) const;
  const Link& link(NodeId src, NodeId dst) const;
  Link& link_mut(NodeId src, NodeId dst);

  const std::vector<NodeId>& nodes() const { return nodes_; }
  const std::map<std::pair<NodeId, NodeId>, Link>& links() const {
    return links_;
  }

  // Undirected adjacency (any link in either direction).
  const std::set<NodeId>& peers(NodeId n) const;

  // BFS hop count on the undirected link graph; -1 if unreachable.
  int hop_distance(NodeId from, NodeId to) const;

  bool connected() const;

 private:
  std::vector<NodeId> nodes_;
  std::map<std::pair<NodeId, NodeId>, Link> links_;
  std::map<NodeId, std::set<NodeId>> adj_;
};

// Graph-based (protocol model) interference.  carrier_sense[n] is the set
// of nodes whose ongoing transmissions defer n; collision[(src,dst)] is the
// set of nodes whose concurrent transmissions destroy a reception at dst.
// Collisions apply only during temporal overlap.
struct InterferenceModel {
  std::map<NodeId, std::set<NodeId>> carrier_sense;
  std::map<std::pair<NodeId, NodeId>, std::set<NodeId>> collision;

  // Defaults: carrier sense = link peers; collision set = nodes within two
  // hops of the receiver (hidden-terminal capable), minus the two endpoints.
  static InterferenceModel defaults(const Topology& topo);

  const std::set<NodeId>& cs_of(NodeId n) const;
  const std::set<NodeId>& collision_of(NodeId src, NodeId dst) const;
};

}  // namespace meshsim
