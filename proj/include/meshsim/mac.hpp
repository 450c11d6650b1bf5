#pragma once

#include <cmath>
#include <stdexcept>

#include "meshsim/types.hpp"

namespace meshsim {

// DCF constants (802.11g conventions; the backoff is slotted and the
// contention window doubles per failed attempt).
inline constexpr SimTime kSlotTime = 20 * kUsec;
inline constexpr int kCwMin = 16;
inline constexpr int kCwMax = 1024;

enum class SampleSource { Active, Passive };

// Smoothed per-link transmission-time estimate W(i,j).
struct LinkEstimate {
  double w_ewma = 0.0;  // microseconds
  SimTime last_sample = 0;
  int sample_count = 0;

  bool has_sample() const { return sample_count > 0; }
  SimTime value() const {
    SimTime v = static_cast<SimTime>(std::llround(w_ewma));
    return v < 1 ? 1 : v;
  }
};

// Transmission-time sample from the driver timestamps: T1 = packet enters
// the MAC queue, T2 = previous packet exits the interface, T3 = current
// packet exits (ack received).  Sample = T3 - max(T1, T2).
inline SimTime measure_w(SimTime t1_enqueue, SimTime t2_prev_exit,
                         SimTime t3_ack) {
  SimTime start = t1_enqueue > t2_prev_exit ? t1_enqueue : t2_prev_exit;
  if (t3_ack < start) {
    throw std::logic_error("measure_w: ack precedes transmission start");
  }
  return t3_ack - start;
}

// EWMA fold; the first sample initializes the estimate directly.  Active
// (dedicated probe) and passive (data) samples use the same weight.
inline void update_estimate(LinkEstimate& est, SimTime sample,
                            SampleSource source, SimTime now, double beta) {
  (void)source;
  if (sample <= 0) throw std::invalid_argument("non-positive W sample");
  if (est.sample_count == 0) {
    est.w_ewma = static_cast<double>(sample);
  } else {
    est.w_ewma = (1.0 - beta) * est.w_ewma + beta * static_cast<double>(sample);
  }
  est.last_sample = now;
  ++est.sample_count;
}

}  // namespace meshsim
