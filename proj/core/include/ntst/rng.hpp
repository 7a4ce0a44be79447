#pragma once
#include <cstdint>
#include <random>

namespace ntst {

/// Deterministic RNG wrapper. std::uniform_int_distribution is
/// implementation-defined, so bounded draws are hand-rolled (rejection
/// sampling) to make seeded streams reproducible across toolchains.
struct Rng {
  std::mt19937_64 gen;
  explicit Rng(uint64_t seed) : gen(seed) {}

  uint64_t next() { return gen(); }

  /// Uniform integer in [lo, hi], inclusive.
  int range(int lo, int hi) {
    uint64_t span = (uint64_t)(hi - lo) + 1;
    uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    uint64_t x;
    do { x = gen(); } while (x >= limit);
    return lo + (int)(x % span);
  }

  /// Uniform double in [0,1) with 53 random bits.
  double uniform01() { return (double)(gen() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return uniform01() < p; }
};

}  // namespace ntst
