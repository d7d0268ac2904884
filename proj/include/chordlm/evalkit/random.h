#pragma once

#include <cstdint>
#include <random>

namespace chordlm::evalkit {

// Uniform draw from [0, n) by rejection on a 64-bit Mersenne Twister, so that
// results depend only on the seed and not on the standard library's
// distribution implementation.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % n;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

}  // namespace chordlm::evalkit
