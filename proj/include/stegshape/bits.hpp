#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace steg {

// Bits stored one per byte, values 0 or 1, in embedding order.
using BitVec = std::vector<std::uint8_t>;

// Distinct pixel indices into a row-major image.
using PositionList = std::vector<std::uint32_t>;

BitVec xor_bits(const BitVec& a, const BitVec& b);

// "0101..." <-> BitVec. Parsing ignores whitespace; any other character is an error.
std::string bits_to_string(const BitVec& bits);
BitVec bits_from_string(const std::string& text);

// One ASCII '0'/'1' per bit, newline-terminated.
BitVec read_bits_file(const std::string& path);
void write_bits_file(const std::string& path, const BitVec& bits);

}  // namespace steg
