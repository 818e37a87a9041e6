// Copyright 2026 transcend authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace transcend {

// Default seed for every randomized sampler in the project.
inline constexpr std::uint64_t kDefaultSeed = 0x5EEDCAFEull;

// splitmix64 finalizer. Stateless and platform independent.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Counter-based generator: the value at (stream, index) is a pure function of
// (seed, stream, index), so sampling loops can be split across threads in any
// order without changing the draw.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t stream, std::uint64_t index) const {
    return mix64(mix64(seed_ ^ (stream * 0xA24BAED4963EE407ull)) ^
                 (index * 0x9FB21C651E98DF25ull));
  }

  // Uniform draw in [0, 1) with 53 random bits.
  double uniform(std::uint64_t stream, std::uint64_t index) const {
    return static_cast<double>(bits(stream, index) >> 11) * 0x1.0p-53;
  }

  // Uniform draw in [lo, hi).
  double uniform(std::uint64_t stream, std::uint64_t index, double lo,
                 double hi) const {
    return lo + (hi - lo) * uniform(stream, index);
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

}  // namespace transcend
