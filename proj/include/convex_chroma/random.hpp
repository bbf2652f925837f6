#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>

namespace convex_chroma {

// Platform-stable uniform draws on top of mt19937_64. The standard
// distributions are implementation-defined, so they are avoided wherever
// output has to be reproducible byte for byte.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform in [0, n) by rejection, n > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % n;
  }

 private:
  std::mt19937_64 engine_;
};

inline double radical_inverse(std::uint64_t index, std::uint64_t base) {
  double inv_base = 1.0 / static_cast<double>(base);
  double factor = inv_base;
  double value = 0.0;
  while (index > 0) {
    value += static_cast<double>(index % base) * factor;
    index /= base;
    factor *= inv_base;
  }
  return value;
}

inline constexpr std::array<std::uint64_t, 8> kHaltonBases{2, 3, 5, 7, 11, 13, 17, 19};

// Coordinate `axis` of the index-th Halton point (index starts at 1 to skip
// the origin).
inline double halton(std::uint64_t index, std::size_t axis) {
  return radical_inverse(index, kHaltonBases.at(axis));
}

}  // namespace convex_chroma
