#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace fdattr {

// First primes, enough for 16-dimensional Halton points.
inline constexpr std::array<std::uint32_t, 16> kHaltonBases = {
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

/// Radical inverse of `index` in `base`; value in [0, 1).
inline double radical_inverse(std::uint64_t index, std::uint32_t base) {
  double f = 1.0;
  double r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

/// Component `dim` of the `index`-th Halton point (index 0 is skipped so
/// the origin never appears).
inline double halton(std::uint64_t index, std::size_t dim) {
  return radical_inverse(index + 1, kHaltonBases[dim % kHaltonBases.size()]);
}

}  // namespace fdattr
