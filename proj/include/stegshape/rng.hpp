#pragma once

#include <cstdint>

#include "stegshape/bits.hpp"

namespace steg {

// splitmix64. 64-bit state, trivially portable, bit-exact across platforms,
// so every simulation artifact can be reproduced from its seed alone.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // 53-bit mantissa -> [0, 1)
  static double to_unit_interval(std::uint64_t v) {
    return static_cast<double>(v >> 11) * (1.0 / 9007199254740992.0);
  }

  double next_f64() { return to_unit_interval(next_u64()); }
};

// One splitmix64 output for a (base, index) pair. Used to derive per-run
// seeds directly from the run ordinal, so execution order cannot matter.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index);

// n bits taken LSB-first from successive 64-bit words of the stream.
BitVec random_bits(SplitMix64& gen, std::size_t n);

// Candidate mask stream. Seeded from session_seed and candidate index h;
// stable per (seed, h) and prefix-consistent in n. The index is offset by one
// and spread by a golden-ratio multiply so h = 0 does not collapse onto the
// session seed itself.
BitVec mask_bits(std::uint64_t session_seed, std::uint64_t h, std::size_t n);

// First `length` entries of a key-seeded Fisher-Yates shuffle of
// [0, pixel_count). Throws if length > pixel_count.
PositionList keyed_path(std::uint64_t key, std::size_t pixel_count, std::size_t length);

}  // namespace steg
