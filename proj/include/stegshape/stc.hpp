#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "stegshape/bits.hpp"
#include "stegshape/image.hpp"
#include "stegshape/shaping.hpp"

namespace steg {

// Matrix-embedding simulation: payload bits are conveyed as parity-check
// syndromes of keyed pixel LSB groups, and the cost of a block is the
// minimum texture-weighted flip cost that realizes its target syndrome.
struct StcConfig {
  int block_cover_bits = 8;    // n: pixels per block
  int block_syndrome_bits = 4; // m: payload bits per block
  std::uint64_t key = 0;       // keyed pixel selection

  // Check matrix, one column per block pixel; column j holds the m-bit value
  // j + 1, so the standard basis is included and every syndrome is reachable.
  std::array<std::uint8_t, 8> h_columns = {1, 2, 3, 4, 5, 6, 7, 8};
};

struct BlockSolution {
  double cost = 0.0;
  std::uint32_t flip_mask = 0;  // bit j set = flip block pixel j
};

struct StcOutcome {
  double total_cost = 0.0;
  PositionList flips;          // pixel indices whose LSB must flip
  std::uint32_t chosen_h = 0;  // selected candidate (shaping variant)
  std::size_t blocks = 0;
};

// w = 1 / (1 + sigma), sigma the standard deviation of the 3x3
// edge-replicated neighborhood. Textured regions are cheaper to touch.
std::vector<double> local_weights(const Image& img, const PositionList& positions);

// Minimum weighted flip cost realizing the target syndrome, by dynamic
// programming over the 2^m partial-syndrome states. Ties broken by
// lexicographically smallest flip set (as a sorted index sequence).
BlockSolution block_min_cost(const BitVec& cover_bits, const std::vector<double>& weights,
                             const BitVec& target_bits, const StcConfig& cfg);

// Splits the payload into m-bit targets (last block zero-padded), assigns
// consecutive n-position groups of the keyed path to blocks, and sums the
// per-block minimum costs.
StcOutcome stc_total_cost(const Image& img, const StcConfig& cfg, const BitVec& payload);

// Minimizes stc_total_cost over the 2^k candidate payloads of the shaping
// family; k = 0 is the unshaped reference. Smallest-h tie break.
StcOutcome stc_shape_select(const Image& img, const BitVec& message,
                            const ShapingConfig& shaping_cfg, const StcConfig& stc_cfg);

}  // namespace steg
