#pragma once

#include <cstdint>

namespace dsa2 {

// splitmix64: the fixed, named generator behind every randomized draw in this
// project. Chosen so traces are bit-reproducible across reimplementations:
// the whole algorithm is the three xor-shift-multiply lines below.
// Reference constants from Steele/Lea/Flood's SplittableRandom.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform in {0, ..., n-1}. Plain modulo: bias is irrelevant at the n used
  // here and the simple rule keeps the generator trivially re-implementable.
  int next_below(int n) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n)); }

  // Independent child stream (splittable-generator idiom).
  SplitMix64 split() { return SplitMix64(next_u64()); }
};

}  // namespace dsa2
