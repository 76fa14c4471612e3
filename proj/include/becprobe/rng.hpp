#pragma once

#include <cstdint>

// Counter-based RNG: output i of stream `seed` is a pure function of
// (seed, i), so parallel consumers can draw disjoint counter ranges without
// any shared state and results do not depend on scheduling.

namespace becprobe {

// SplitMix64 finalizer; bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

struct CounterRng {
  std::uint64_t seed;

  std::uint64_t word(std::uint64_t counter) const {
    return mix64(seed + counter * 0x9E3779B97F4A7C15ull);
  }

  // Uniform on (0, 1]: never 0, so it is safe under log().
  double uniform(std::uint64_t counter) const {
    return static_cast<double>((word(counter) >> 11) + 1) * 0x1.0p-53;
  }
};

// Decorrelated child seed for a work item (sweep point, oracle run).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed) + mix64(index + 1));
}

}  // namespace becprobe
