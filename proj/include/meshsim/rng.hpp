#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace meshsim {

// One pseudo-random stream per stochastic consumer (per-flow arrivals,
// per-link loss, per-node backoff, ...).  Every stream seed is derived from
// the master seed plus a stable label, so adding a consumer never perturbs
// the draws seen by existing ones.
class RngStream {
 public:
  RngStream() : RngStream(0) {}
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0,1), 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [lo, hi], both inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  bool bernoulli(double p) { return next_double() < p; }

  // Exponential with the given mean (> 0).
  double exponential(double mean);

 private:
  std::mt19937_64 gen_;
};

// Stable seed derivation: fnv1a(label) mixed with the master seed.
std::uint64_t derive_stream_seed(std::uint64_t master_seed,
                                 std::string_view label);

}  // namespace meshsim
