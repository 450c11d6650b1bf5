#include "meshsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace meshsim {

std::optional<double> mean_delay_us(std::span<const DeliveryRecord> records) {
  if (records.empty()) return std::nullopt;
  double sum = 0;
  for (const DeliveryRecord& r : records) {
    sum += static_cast<double>(r.arrived - r.departed);
  }
  return sum / static_cast<double>(records.size());
}

std::optional<double> delay_differential(std::optional<double> candidate,
                                         std::optional<double> baseline) {
  if (!candidate || !baseline) return std::nullopt;
  return *candidate - *baseline;
}

std::optional<double> throughput_ratio(long candidate_bytes,
                                       long baseline_bytes) {
  if (baseline_bytes <= 0) return std::nullopt;
  return static_cast<double>(candidate_bytes) /
         static_cast<double>(baseline_bytes);
}

std::vector<std::pair<double, double>> empirical_cdf(
    std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("empirical_cdf: empty input");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    // Ties collapse to the upper step.
    if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
    out.emplace_back(values[i], static_cast<double>(i + 1) / n);
  }
  return out;
}

LossDecomposition loss_decomposition(const FlowStats& stats) {
  LossDecomposition d;
  if (stats.injected <= 0) return d;
  const double n = static_cast<double>(stats.injected);
  d.delivered_pct = 100.0 * static_cast<double>(stats.delivered) / n;
  d.overflow_pct = 100.0 * static_cast<double>(stats.drops.overflow) / n;
  d.retry_pct = 100.0 * static_cast<double>(stats.drops.retry) / n;
  d.loop_pct = 100.0 * static_cast<double>(stats.drops.loop) / n;
  d.in_flight_pct = 100.0 * static_cast<double>(stats.in_flight()) / n;
  return d;
}

std::vector<std::pair<double, double>> reordering_cdf(
    std::span<const DeliveryRecord> records) {
  // Group by flow, rank by arrival vs by seq.
  std::map<FlowId, std::vector<const DeliveryRecord*>> per_flow;
  for (const DeliveryRecord& r : records) per_flow[r.flow].push_back(&r);
  std::vector<double> displacements;
  for (auto& [flow, recs] : per_flow) {
    std::vector<const DeliveryRecord*> by_arrival = recs;
    std::stable_sort(by_arrival.begin(), by_arrival.end(),
                     [](const DeliveryRecord* a, const DeliveryRecord* b) {
                       return a->arrived < b->arrived;
                     });
    std::vector<const DeliveryRecord*> by_seq = recs;
    std::sort(by_seq.begin(), by_seq.end(),
              [](const DeliveryRecord* a, const DeliveryRecord* b) {
                return a->seq < b->seq;
              });
    std::map<int, long> seq_rank;
    for (std::size_t i = 0; i < by_seq.size(); ++i) {
      seq_rank[by_seq[i]->seq] = static_cast<long>(i);
    }
    for (std::size_t i = 0; i < by_arrival.size(); ++i) {
      long d = static_cast<long>(i) - seq_rank[by_arrival[i]->seq];
      displacements.push_back(std::abs(static_cast<double>(d)));
    }
  }
  if (displacements.empty()) return {};
  return empirical_cdf(std::move(displacements));
}

}  // namespace meshsim
