#include "stegshape/rng.hpp"

#include <numeric>
#include <stdexcept>

namespace steg {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) {
  SplitMix64 gen(base ^ ((index + 1) * kGolden));
  return gen.next_u64();
}

BitVec random_bits(SplitMix64& gen, std::size_t n) {
  BitVec bits(n);
  std::uint64_t word = 0;
  for (std::size_t t = 0; t < n; ++t) {
    if (t % 64 == 0) {
      word = gen.next_u64();
    }
    bits[t] = static_cast<std::uint8_t>((word >> (t % 64)) & 1u);
  }
  return bits;
}

BitVec mask_bits(std::uint64_t session_seed, std::uint64_t h, std::size_t n) {
  SplitMix64 gen(session_seed ^ ((h + 1) * kGolden));
  return random_bits(gen, n);
}

PositionList keyed_path(std::uint64_t key, std::size_t pixel_count, std::size_t length) {
  if (length > pixel_count) {
    throw std::invalid_argument("keyed_path: path longer than cover");
  }
  PositionList positions(pixel_count);
  std::iota(positions.begin(), positions.end(), 0u);
  SplitMix64 gen(key);
  for (std::size_t i = 0; i < length; ++i) {
    // Modulo bias is negligible for pixel counts << 2^64.
    std::size_t j = i + static_cast<std::size_t>(gen.next_u64() % (pixel_count - i));
    std::swap(positions[i], positions[j]);
  }
  positions.resize(length);
  return positions;
}

}  // namespace steg
