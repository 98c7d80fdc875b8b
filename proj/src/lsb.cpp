#include "stegshape/lsb.hpp"

#include <numeric>
#include <stdexcept>

namespace steg {

PositionList sequential_path(std::size_t n) {
  PositionList path(n);
  std::iota(path.begin(), path.end(), 0u);
  return path;
}

Image embed_lsb(const Image& cover, const BitVec& payload, const PositionList& path) {
  if (payload.size() > path.size()) {
    throw std::invalid_argument("embed_lsb: payload longer than path");
  }
  Image stego = cover;
  for (std::size_t i = 0; i < payload.size(); ++i) {
    std::uint32_t pos = path[i];
    if (pos >= stego.pixel_count()) {
      throw std::invalid_argument("embed_lsb: path index out of range");
    }
    stego.pixels[pos] = static_cast<std::uint8_t>((stego.pixels[pos] & ~1u) | (payload[i] & 1u));
  }
  return stego;
}

BitVec extract_lsb(const Image& stego, std::size_t length, const PositionList& path) {
  if (length > path.size()) {
    throw std::invalid_argument("extract_lsb: length exceeds path");
  }
  BitVec bits(length);
  for (std::size_t i = 0; i < length; ++i) {
    std::uint32_t pos = path[i];
    if (pos >= stego.pixel_count()) {
      throw std::invalid_argument("extract_lsb: path index out of range");
    }
    bits[i] = stego.pixels[pos] & 1u;
  }
  return bits;
}

}  // namespace steg
