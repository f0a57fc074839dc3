#pragma once

#include <cstdint>
#include <limits>

namespace logitmeta {

// Counter-based 64-bit generator: the i-th output of a stream is
// mix(key + i * kGamma) with the SplitMix64 finaliser as mix. A stream is
// fully determined by its key, and stream_key(seed, replica) derives one key
// per replica so parallel runs reproduce regardless of scheduling.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0) : key_(key), counter_(counter) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix(key_ + (++counter_) * kGamma); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound), bound >= 1 (Lemire's multiply-shift with rejection).
  std::uint64_t below(std::uint64_t bound);

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

  static std::uint64_t mix(std::uint64_t z);

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t replica);

inline CounterRng replica_rng(std::uint64_t seed, std::uint64_t replica) {
  return CounterRng(stream_key(seed, replica));
}

}  // namespace logitmeta
