#pragma once

#include "stegshape/bits.hpp"
#include "stegshape/image.hpp"

namespace steg {

// Row-major indices 0..n-1 ("the first n pixels").
PositionList sequential_path(std::size_t n);

// LSB substitution along a pixel path. The cover is not mutated; pixels off
// the path are untouched. The embedder is deliberately kept behind this
// (cover, payload, path) signature so the shaping layer stays
// embedder-agnostic.
Image embed_lsb(const Image& cover, const BitVec& payload, const PositionList& path);

BitVec extract_lsb(const Image& stego, std::size_t length, const PositionList& path);

}  // namespace steg
