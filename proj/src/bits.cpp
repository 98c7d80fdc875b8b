#include "stegshape/bits.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>

#include "stegshape/errors.hpp"

namespace steg {

BitVec xor_bits(const BitVec& a, const BitVec& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("xor_bits: length mismatch");
  }
  BitVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = a[i] ^ b[i];
  }
  return out;
}

std::string bits_to_string(const BitVec& bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) {
    s.push_back(b ? '1' : '0');
  }
  return s;
}

BitVec bits_from_string(const std::string& text) {
  BitVec bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c == '0' || c == '1') {
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("bits_from_string: invalid character");
    }
  }
  return bits;
}

BitVec read_bits_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open bit file: " + path);
  }
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return bits_from_string(text);
  } catch (const std::invalid_argument&) {
    throw IoError("malformed bit file: " + path);
  }
}

void write_bits_file(const std::string& path, const BitVec& bits) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open output file: " + path);
  }
  out << bits_to_string(bits) << '\n';
  if (!out) {
    throw IoError("write failed: " + path);
  }
}

}  // namespace steg
