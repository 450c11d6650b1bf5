#include "meshsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace meshsim {

namespace {

SimTime airtime_us(int bytes, double rate_mbps, SimTime overhead) {
  // bits / Mbps = microseconds.
  return static_cast<SimTime>(std::llround(bytes * 8.0 / rate_mbps)) + overhead;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) {
    if (t[0] == '#') break;
    toks.push_back(t);
  }
  return toks;
}

bool parse_number(const std::string& s, double& out) {
  try {
    std::size_t used = 0;
    out = std::stod(s, &used);
    return used == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

SimTime parse_time(const std::string& tok) {
  double v = 0;
  std::string t = tok;
  SimTime unit = kUsec;
  auto ends_with = [&](const char* suf) {
    std::size_t n = std::string(suf).size();
    return t.size() > n && t.compare(t.size() - n, n, suf) == 0;
  };
  if (ends_with("ms")) {
    unit = kMsec;
    t = t.substr(0, t.size() - 2);
  } else if (ends_with("us")) {
    unit = kUsec;
    t = t.substr(0, t.size() - 2);
  } else if (ends_with("s")) {
    unit = kSec;
    t = t.substr(0, t.size() - 1);
  }
  if (!parse_number(t, v)) throw ScenarioError("bad time literal '" + tok + "'");
  return static_cast<SimTime>(std::llround(v * static_cast<double>(unit)));
}

double parse_rate_bps(const std::string& tok) {
  double v = 0;
  std::string t = tok;
  double unit = 1.0;
  auto ends_with = [&](const char* suf) {
    std::size_t n = std::string(suf).size();
    return t.size() > n && t.compare(t.size() - n, n, suf) == 0;
  };
  if (ends_with("mbps")) {
    unit = 1e6;
    t = t.substr(0, t.size() - 4);
  } else if (ends_with("kbps")) {
    unit = 1e3;
    t = t.substr(0, t.size() - 4);
  } else if (ends_with("bps")) {
    t = t.substr(0, t.size() - 3);
  }
  if (!parse_number(t, v)) throw ScenarioError("bad rate literal '" + tok + "'");
  return v * unit;
}

SimTime Scenario::data_airtime() const {
  return airtime_us(params.packet_size, params.data_rate_mbps,
                    params.mac_overhead);
}

SimTime Scenario::control_airtime(int bytes) const {
  return airtime_us(bytes, params.control_rate_mbps, params.mac_overhead);
}

InterferenceModel Scenario::interference() const {
  InterferenceModel m = InterferenceModel::defaults(topo);
  for (const auto& [n, set] : cs_override) {
    auto& cs = m.carrier_sense[n];
    cs = topo.peers(n);  // invariant: carrier sense covers the link peers
    cs.insert(set.begin(), set.end());
    cs.erase(n);
  }
  for (const auto& [key, set] : collision_override) {
    auto filtered = set;
    filtered.erase(key.first);
    filtered.erase(key.second);
    m.collision[key] = filtered;
  }
  return m;
}

Scenario parse_scenario(const std::string& text) {
  Scenario s;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::vector<std::pair<int, Link>> pending_links;
  bool explicit_stop_seen = false;
  (void)explicit_stop_seen;

  auto need_node = [&](int ln, NodeId n) {
    if (!s.topo.has_node(n)) {
      throw ScenarioError(ln, "unknown node " + std::to_string(n));
    }
  };
  auto to_int = [&](int ln, const std::string& t) {
    double v;
    if (!parse_number(t, v) || v != std::floor(v)) {
      throw ScenarioError(ln, "expected integer, got '" + t + "'");
    }
    return static_cast<long long>(v);
  };
  auto to_double = [&](int ln, const std::string& t) {
    double v;
    if (!parse_number(t, v)) {
      throw ScenarioError(ln, "expected number, got '" + t + "'");
    }
    return v;
  };

  while (std::getline(in, line)) {
    ++line_no;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string& key = toks[0];
    auto arg = [&](std::size_t i) -> const std::string& {
      if (i >= toks.size()) {
        throw ScenarioError(line_no, "missing argument for '" + key + "'");
      }
      return toks[i];
    };

    try {
      if (key == "scenario") {
        s.name = arg(1);
      } else if (key == "seed") {
        s.params.seed = static_cast<std::uint64_t>(to_int(line_no, arg(1)));
      } else if (key == "duration") {
        s.params.duration = parse_time(arg(1));
      } else if (key == "packet_size") {
        s.params.packet_size = static_cast<int>(to_int(line_no, arg(1)));
      } else if (key == "data_rate_mbps") {
        s.params.data_rate_mbps = to_double(line_no, arg(1));
      } else if (key == "control_rate_mbps") {
        s.params.control_rate_mbps = to_double(line_no, arg(1));
      } else if (key == "mac_overhead") {
        s.params.mac_overhead = parse_time(arg(1));
      } else if (key == "beacon_interval") {
        s.params.beacon_interval = parse_time(arg(1));
      } else if (key == "probe_interval") {
        s.params.probe_interval = parse_time(arg(1));
      } else if (key == "gamma") {
        s.params.gamma = to_double(line_no, arg(1));
      } else if (key == "buffer_capacity") {
        s.params.buffer_capacity = static_cast<int>(to_int(line_no, arg(1)));
      } else if (key == "retry_limit") {
        s.params.retry_limit = static_cast<int>(to_int(line_no, arg(1)));
      } else if (key == "ttl") {
        s.params.ttl = static_cast<int>(to_int(line_no, arg(1)));
      } else if (key == "background_rate_pps") {
        s.params.background_rate_pps = to_double(line_no, arg(1));
      } else if (key == "ewma_beta") {
        s.params.ewma_beta = to_double(line_no, arg(1));
      } else if (key == "poison_reverse") {
        const std::string& v = arg(1);
        if (v != "on" && v != "off") {
          throw ScenarioError(line_no, "poison_reverse takes on|off");
        }
        s.params.poison_reverse = (v == "on");
      } else if (key == "protocol") {
        auto p = protocol_from_string(arg(1));
        if (!p) throw ScenarioError(line_no, "unknown protocol '" + arg(1) + "'");
        s.protocol = *p;
      } else if (key == "alpha") {
        s.alpha = to_double(line_no, arg(1));
        if (s.alpha < 0.0 || s.alpha > 1.0) {
          throw ScenarioError(line_no, "alpha must be in [0,1]");
        }
      } else if (key == "node") {
        s.topo.add_node(static_cast<NodeId>(to_int(line_no, arg(1))));
      } else if (key == "link") {
        Link l;
        l.src = static_cast<NodeId>(to_int(line_no, arg(1)));
        l.dst = static_cast<NodeId>(to_int(line_no, arg(2)));
        double prob = 1.0, prob_rev = -1.0;
        SimTime airtime = 0;
        for (std::size_t i = 3; i < toks.size(); i += 2) {
          const std::string& k = toks[i];
          if (k == "prob") {
            prob = to_double(line_no, arg(i + 1));
          } else if (k == "prob_rev") {
            prob_rev = to_double(line_no, arg(i + 1));
          } else if (k == "airtime") {
            airtime = parse_time(arg(i + 1));
          } else {
            throw ScenarioError(line_no, "unknown link attribute '" + k + "'");
          }
        }
        if (prob < 0.0 || prob > 1.0 || (prob_rev != -1.0 && prob_rev > 1.0)) {
          throw ScenarioError(line_no, "success_prob must be in [0,1]");
        }
        l.success_prob = prob;
        l.base_airtime = airtime;
        pending_links.emplace_back(line_no, l);
        Link rev = l;
        std::swap(rev.src, rev.dst);
        if (prob_rev >= 0.0) rev.success_prob = prob_rev;
        pending_links.emplace_back(line_no, rev);
      } else if (key == "flow") {
        FlowSpec f;
        f.name = arg(1);
        for (std::size_t i = 2; i < toks.size(); i += 2) {
          const std::string& k = toks[i];
          if (k == "src") {
            f.src = static_cast<NodeId>(to_int(line_no, arg(i + 1)));
          } else if (k == "dst") {
            f.dst = static_cast<NodeId>(to_int(line_no, arg(i + 1)));
          } else if (k == "rate") {
            f.rate_bps = parse_rate_bps(arg(i + 1));
          } else if (k == "start") {
            f.start = parse_time(arg(i + 1));
          } else if (k == "stop") {
            f.stop = parse_time(arg(i + 1));
          } else {
            throw ScenarioError(line_no, "unknown flow attribute '" + k + "'");
          }
        }
        if (f.src == f.dst) throw ScenarioError(line_no, "flow src == dst");
        if (f.rate_bps < 0) throw ScenarioError(line_no, "negative flow rate");
        f.id = static_cast<FlowId>(s.flows.size());
        s.flows.push_back(f);
      } else if (key == "carrier_sense") {
        NodeId n = static_cast<NodeId>(to_int(line_no, arg(1)));
        auto& set = s.cs_override[n];
        for (std::size_t i = 2; i < toks.size(); ++i) {
          set.insert(static_cast<NodeId>(to_int(line_no, toks[i])));
        }
      } else if (key == "collision") {
        NodeId a = static_cast<NodeId>(to_int(line_no, arg(1)));
        NodeId b = static_cast<NodeId>(to_int(line_no, arg(2)));
        auto& set = s.collision_override[{a, b}];
        for (std::size_t i = 3; i < toks.size(); ++i) {
          set.insert(static_cast<NodeId>(to_int(line_no, toks[i])));
        }
      } else if (key == "link_event") {
        LinkChangeSpec ev;
        for (std::size_t i = 1; i < toks.size();) {
          const std::string& k = toks[i];
          if (k == "at") {
            ev.at = parse_time(arg(i + 1));
            i += 2;
          } else if (k == "link") {
            ev.src = static_cast<NodeId>(to_int(line_no, arg(i + 1)));
            ev.dst = static_cast<NodeId>(to_int(line_no, arg(i + 2)));
            i += 3;
          } else if (k == "prob") {
            ev.success_prob = to_double(line_no, arg(i + 1));
            i += 2;
          } else {
            throw ScenarioError(line_no, "unknown link_event field '" + k + "'");
          }
        }
        if (ev.success_prob < 0.0 || ev.success_prob > 1.0) {
          throw ScenarioError(line_no, "success_prob must be in [0,1]");
        }
        s.link_changes.push_back(ev);
      } else if (key == "alpha_path1" || key == "alpha_path2") {
        std::vector<NodeId>& path =
            (key == "alpha_path1") ? s.alpha_path1 : s.alpha_path2;
        path.clear();
        for (std::size_t i = 1; i < toks.size(); ++i) {
          path.push_back(static_cast<NodeId>(to_int(line_no, toks[i])));
        }
      } else {
        throw ScenarioError(line_no, "unknown directive '" + key + "'");
      }
    } catch (const ScenarioError&) {
      throw;
    } catch (const std::exception& e) {
      throw ScenarioError(line_no, e.what());
    }
  }

  // Resolve links now that the parameters and node set are final.
  for (auto& [ln, l] : pending_links) {
    need_node(ln, l.src);
    need_node(ln, l.dst);
    if (l.base_airtime == 0) l.base_airtime = s.data_airtime();
    s.topo.add_link(l);
  }
  for (const FlowSpec& f : s.flows) {
    need_node(0, f.src);
    need_node(0, f.dst);
  }
  for (const LinkChangeSpec& ev : s.link_changes) {
    if (!s.topo.has_link(ev.src, ev.dst)) {
      throw ScenarioError("link_event references unknown link " +
                          std::to_string(ev.src) + "->" +
                          std::to_string(ev.dst));
    }
  }
  for (const auto& [n, set] : s.cs_override) {
    need_node(0, n);
    for (NodeId m : set) need_node(0, m);
  }
  for (const auto& [key, set] : s.collision_override) {
    if (!s.topo.has_link(key.first, key.second)) {
      throw ScenarioError("collision override references unknown link");
    }
    for (NodeId m : set) need_node(0, m);
  }
  auto check_path = [&](const std::vector<NodeId>& p, const char* which) {
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      if (!s.topo.has_link(p[i], p[i + 1])) {
        throw ScenarioError(std::string(which) + " uses a missing link " +
                            std::to_string(p[i]) + "->" +
                            std::to_string(p[i + 1]));
      }
    }
  };
  check_path(s.alpha_path1, "alpha_path1");
  check_path(s.alpha_path2, "alpha_path2");
  if (s.protocol == ProtocolId::AlphaSplit) {
    if (s.alpha_path1.size() < 2 || s.alpha_path2.size() < 2) {
      throw ScenarioError("alpha protocol requires alpha_path1 and alpha_path2");
    }
    if (s.alpha_path1.front() != s.alpha_path2.front() ||
        s.alpha_path1.back() != s.alpha_path2.back()) {
      throw ScenarioError("alpha paths must share their endpoints");
    }
    for (std::size_t i = 1; i + 1 < s.alpha_path1.size(); ++i) {
      for (std::size_t j = 1; j + 1 < s.alpha_path2.size(); ++j) {
        if (s.alpha_path1[i] == s.alpha_path2[j]) {
          throw ScenarioError("alpha paths must be node-disjoint inside");
        }
      }
    }
  }
  if (s.params.duration <= 0) throw ScenarioError("duration must be > 0");
  if (s.params.gamma < 0.0 || s.params.gamma > 1.0) {
    throw ScenarioError("gamma must be in [0,1]");
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const ScenarioError& e) {
    throw ScenarioError(path + ": " + e.what());
  }
}

namespace {

std::string time_str(SimTime t) {
  if (t % kSec == 0) return std::to_string(t / kSec) + "s";
  if (t % kMsec == 0) return std::to_string(t / kMsec) + "ms";
  return std::to_string(t) + "us";
}

std::string num_str(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

}  // namespace

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "scenario " << s.name << "\n";
  out << "seed " << s.params.seed << "\n";
  out << "duration " << time_str(s.params.duration) << "\n";
  out << "packet_size " << s.params.packet_size << "\n";
  out << "data_rate_mbps " << num_str(s.params.data_rate_mbps) << "\n";
  out << "control_rate_mbps " << num_str(s.params.control_rate_mbps) << "\n";
  out << "mac_overhead " << time_str(s.params.mac_overhead) << "\n";
  out << "beacon_interval " << time_str(s.params.beacon_interval) << "\n";
  out << "probe_interval " << time_str(s.params.probe_interval) << "\n";
  out << "gamma " << num_str(s.params.gamma) << "\n";
  out << "buffer_capacity " << s.params.buffer_capacity << "\n";
  out << "retry_limit " << s.params.retry_limit << "\n";
  out << "ttl " << s.params.ttl << "\n";
  out << "background_rate_pps " << num_str(s.params.background_rate_pps)
      << "\n";
  out << "ewma_beta " << num_str(s.params.ewma_beta) << "\n";
  out << "poison_reverse " << (s.params.poison_reverse ? "on" : "off") << "\n";
  out << "protocol " << to_string(s.protocol) << "\n";
  out << "alpha " << num_str(s.alpha) << "\n";
  for (NodeId n : s.topo.nodes()) out << "node " << n << "\n";
  for (const auto& [key, l] : s.topo.links()) {
    if (key.first > key.second && s.topo.has_link(key.second, key.first)) {
      continue;  // emitted with the forward direction
    }
    out << "link " << l.src << " " << l.dst << " prob " << num_str(l.success_prob);
    if (s.topo.has_link(l.dst, l.src)) {
      const Link& rev = s.topo.link(l.dst, l.src);
      if (rev.success_prob != l.success_prob) {
        out << " prob_rev " << num_str(rev.success_prob);
      }
    }
    if (l.base_airtime != s.data_airtime()) {
      out << " airtime " << time_str(l.base_airtime);
    }
    out << "\n";
  }
  for (const FlowSpec& f : s.flows) {
    out << "flow " << f.name << " src " << f.src << " dst " << f.dst
        << " rate " << num_str(f.rate_bps) << "bps";
    if (f.start != 0) out << " start " << time_str(f.start);
    if (f.stop != 0) out << " stop " << time_str(f.stop);
    out << "\n";
  }
  for (const auto& [n, set] : s.cs_override) {
    out << "carrier_sense " << n;
    for (NodeId m : set) out << " " << m;
    out << "\n";
  }
  for (const auto& [key, set] : s.collision_override) {
    out << "collision " << key.first << " " << key.second;
    for (NodeId m : set) out << " " << m;
    out << "\n";
  }
  for (const LinkChangeSpec& ev : s.link_changes) {
    out << "link_event at " << time_str(ev.at) << " link " << ev.src << " "
        << ev.dst << " prob " << num_str(ev.success_prob) << "\n";
  }
  if (!s.alpha_path1.empty()) {
    out << "alpha_path1";
    for (NodeId n : s.alpha_path1) out << " " << n;
    out << "\n";
  }
  if (!s.alpha_path2.empty()) {
    out << "alpha_path2";
    for (NodeId n : s.alpha_path2) out << " " << n;
    out << "\n";
  }
  return out.str();
}

}  // namespace meshsim
