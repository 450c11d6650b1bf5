#pragma once

#include <cstdint>
#include <limits>

namespace meshsim {

// All simulation time is integer microseconds since simulation start.
using SimTime = std::int64_t;

inline constexpr SimTime kUsec = 1;
inline constexpr SimTime kMsec = 1000;
inline constexpr SimTime kSec = 1000000;

using NodeId = int;
using FlowId = int;

inline constexpr NodeId kNoNode = -1;

// Congestion measures and ETX values share the microsecond scale (BP and
// E-BP measures are queue lengths, still integer).  kInfMeasure marks
// unknown, stale or poisoned entries.
using Measure = std::int64_t;
inline constexpr Measure kInfMeasure = std::numeric_limits<Measure>::max();

// Saturating add for non-negative measures.
inline Measure measure_add(Measure a, Measure b) {
  if (a == kInfMeasure || b == kInfMeasure) return kInfMeasure;
  if (a > kInfMeasure - b) return kInfMeasure;
  return a + b;
}

}  // namespace meshsim
