#pragma once

#include <cstdint>

namespace dyadic {

/// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Counter-based stream: the i-th draw depends only on (seed, stream, i), so a
/// sample index fixes its randomness no matter which worker evaluates it.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix64(seed ^ mix64(stream + 0x632BE59BD9B4E019ULL))) {}

  std::uint64_t next() { return mix64(key_ + 0xD1B54A32D192ED03ULL * ++counter_); }
  std::uint64_t bits(int n) { return n >= 64 ? next() : (next() & ((1ULL << n) - 1)); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace dyadic
