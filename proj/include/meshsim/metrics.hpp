#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "meshsim/types.hpp"

namespace meshsim {

struct DeliveryRecord {
  FlowId flow = -1;
  int seq = 0;
  SimTime departed = 0;  // source enqueue time
  SimTime arrived = 0;   // delivery at the destination
  int hops = 0;
};

struct LossCounts {
  long overflow = 0;
  long retry = 0;
  long loop = 0;
  long total() const { return overflow + retry + loop; }
};

struct FlowStats {
  std::string name;
  NodeId src = kNoNode;
  NodeId dst = kNoNode;
  bool background = false;
  long injected = 0;
  long delivered = 0;
  long bytes = 0;
  LossCounts drops;
  std::vector<DeliveryRecord> records;

  long in_flight() const {
    return injected - delivered - drops.total();
  }
};

// D = (1/M) * sum(arrived - departed); undefined (not zero) when M = 0.
std::optional<double> mean_delay_us(std::span<const DeliveryRecord> records);

// D_candidate - D_baseline; negative favors the candidate.
std::optional<double> delay_differential(std::optional<double> candidate,
                                         std::optional<double> baseline);

// bytes_candidate / bytes_baseline; undefined when the baseline is zero.
std::optional<double> throughput_ratio(long candidate_bytes,
                                       long baseline_bytes);

// Sorted empirical CDF (v_(i), i/n); tied values share the upper step.
// Throws std::invalid_argument on an empty input.
std::vector<std::pair<double, double>> empirical_cdf(std::vector<double> values);

struct LossDecomposition {
  double delivered_pct = 0;
  double overflow_pct = 0;
  double retry_pct = 0;
  double loop_pct = 0;
  double in_flight_pct = 0;
};
LossDecomposition loss_decomposition(const FlowStats& stats);

// Per-packet displacement: arrival rank minus seq rank among delivered
// packets of the same flow; returns the CDF over |displacement|.
std::vector<std::pair<double, double>> reordering_cdf(
    std::span<const DeliveryRecord> records);

}  // namespace meshsim
