#include "stegshape/stc.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stegshape/rng.hpp"

namespace steg {

namespace {

// Lexicographic order on flip sets viewed as sorted index sequences.
// Precondition: neither mask is a subset of the other, or they are equal —
// which is what equal-cost solutions under strictly positive weights give.
bool flip_lex_less(std::uint32_t a, std::uint32_t b) {
  if (a == b) {
    return false;
  }
  unsigned i = static_cast<unsigned>(std::countr_zero(a ^ b));
  if ((a >> i) & 1u) {
    return (b >> (i + 1)) != 0;
  }
  return (a >> (i + 1)) == 0;
}

void validate_config(const StcConfig& cfg) {
  if (cfg.block_cover_bits < 1 || cfg.block_cover_bits > 8) {
    throw std::invalid_argument("stc: block_cover_bits must be in 1..8");
  }
  if (cfg.block_syndrome_bits < 1 || cfg.block_syndrome_bits > 8) {
    throw std::invalid_argument("stc: block_syndrome_bits must be in 1..8");
  }
  unsigned states = 1u << cfg.block_syndrome_bits;
  for (int j = 0; j < cfg.block_cover_bits; ++j) {
    if (cfg.h_columns[j] >= states) {
      throw std::invalid_argument("stc: check matrix column exceeds m bits");
    }
  }
  // Reachability closure from 0: the columns must span every syndrome.
  std::vector<bool> seen(states, false);
  seen[0] = true;
  for (unsigned round = 0; round < states; ++round) {
    bool grew = false;
    for (unsigned s = 0; s < states; ++s) {
      if (!seen[s]) continue;
      for (int j = 0; j < cfg.block_cover_bits; ++j) {
        unsigned t = s ^ cfg.h_columns[j];
        if (!seen[t]) {
          seen[t] = grew = true;
        }
      }
    }
    if (!grew) break;
  }
  for (unsigned s = 0; s < states; ++s) {
    if (!seen[s]) {
      throw std::invalid_argument("stc: check matrix does not span all syndromes");
    }
  }
}

struct Cell {
  double cost = 0.0;
  std::uint32_t flips = 0;
  bool live = false;
};

// DP over partial syndromes, columns in index order. Costs accumulate in
// ascending column order on every path, so equal-cost comparisons are exact.
BlockSolution solve_block(const std::uint8_t* cover_bits, const double* weights,
                          unsigned target, const StcConfig& cfg) {
  unsigned states = 1u << cfg.block_syndrome_bits;
  std::vector<Cell> cur(states), nxt(states);
  cur[0] = {0.0, 0, true};
  for (int j = 0; j < cfg.block_cover_bits; ++j) {
    for (auto& cell : nxt) {
      cell.live = false;
    }
    for (unsigned s = 0; s < states; ++s) {
      if (!cur[s].live) continue;
      for (int bit = 0; bit < 2; ++bit) {
        unsigned ns = bit ? s ^ cfg.h_columns[j] : s;
        bool flip = (bit != cover_bits[j]);
        double cost = cur[s].cost + (flip ? weights[j] : 0.0);
        std::uint32_t flips = cur[s].flips | (flip ? (1u << j) : 0u);
        Cell& dst = nxt[ns];
        if (!dst.live || cost < dst.cost ||
            (cost == dst.cost && flip_lex_less(flips, dst.flips))) {
          dst = {cost, flips, true};
        }
      }
    }
    std::swap(cur, nxt);
  }
  if (!cur[target].live) {
    throw std::logic_error("stc: target syndrome unreachable");
  }
  return {cur[target].cost, cur[target].flips};
}

// Path, weights and cover bits are shared by all candidate payloads of the
// same length; only the block targets change per candidate.
struct PreparedBlocks {
  std::size_t blocks = 0;
  PositionList positions;
  std::vector<double> weights;
  std::vector<std::uint8_t> cover_bits;
};

PreparedBlocks prepare_blocks(const Image& img, const StcConfig& cfg,
                              std::size_t payload_bits) {
  validate_config(cfg);
  PreparedBlocks prep;
  if (payload_bits == 0) {
    return prep;
  }
  std::size_t m = static_cast<std::size_t>(cfg.block_syndrome_bits);
  std::size_t n = static_cast<std::size_t>(cfg.block_cover_bits);
  prep.blocks = (payload_bits + m - 1) / m;
  std::size_t needed = prep.blocks * n;
  if (needed > img.pixel_count()) {
    throw std::invalid_argument("stc: cover too small for syndrome blocks");
  }
  prep.positions = keyed_path(cfg.key, img.pixel_count(), needed);
  prep.weights = local_weights(img, prep.positions);
  prep.cover_bits.resize(needed);
  for (std::size_t i = 0; i < needed; ++i) {
    prep.cover_bits[i] = img.pixels[prep.positions[i]] & 1u;
  }
  return prep;
}

unsigned block_target(const BitVec& payload, std::size_t block, int m) {
  unsigned t = 0;
  for (int b = 0; b < m; ++b) {
    std::size_t idx = block * m + b;
    unsigned bit = idx < payload.size() ? payload[idx] : 0;  // zero padding
    t = (t << 1) | bit;
  }
  return t;
}

StcOutcome solve_payload(const PreparedBlocks& prep, const StcConfig& cfg,
                         const BitVec& payload, bool collect_flips) {
  StcOutcome outcome;
  outcome.blocks = prep.blocks;
  std::size_t n = static_cast<std::size_t>(cfg.block_cover_bits);
  for (std::size_t b = 0; b < prep.blocks; ++b) {
    unsigned target = block_target(payload, b, cfg.block_syndrome_bits);
    BlockSolution sol = solve_block(prep.cover_bits.data() + b * n,
                                    prep.weights.data() + b * n, target, cfg);
    outcome.total_cost += sol.cost;
    if (collect_flips) {
      for (std::size_t j = 0; j < n; ++j) {
        if (sol.flip_mask & (1u << j)) {
          outcome.flips.push_back(prep.positions[b * n + j]);
        }
      }
    }
  }
  return outcome;
}

}  // namespace

std::vector<double> local_weights(const Image& img, const PositionList& positions) {
  std::vector<double> weights;
  weights.reserve(positions.size());
  for (auto pos : positions) {
    if (pos >= img.pixel_count()) {
      throw std::invalid_argument("local_weights: position out of range");
    }
    int row = static_cast<int>(pos) / img.width;
    int col = static_cast<int>(pos) % img.width;
    double sum = 0.0, sq = 0.0;
    for (int di = -1; di <= 1; ++di) {
      for (int dj = -1; dj <= 1; ++dj) {
        int r = std::clamp(row + di, 0, img.height - 1);
        int c = std::clamp(col + dj, 0, img.width - 1);
        double v = img.at(r, c);
        sum += v;
        sq += v * v;
      }
    }
    double mean = sum / 9.0;
    double var = std::max(0.0, sq / 9.0 - mean * mean);
    weights.push_back(1.0 / (1.0 + std::sqrt(var)));
  }
  return weights;
}

BlockSolution block_min_cost(const BitVec& cover_bits, const std::vector<double>& weights,
                             const BitVec& target_bits, const StcConfig& cfg) {
  validate_config(cfg);
  if (cover_bits.size() != static_cast<std::size_t>(cfg.block_cover_bits) ||
      weights.size() != cover_bits.size()) {
    throw std::invalid_argument("block_min_cost: cover bits / weights size mismatch");
  }
  if (target_bits.size() != static_cast<std::size_t>(cfg.block_syndrome_bits)) {
    throw std::invalid_argument("block_min_cost: target size mismatch");
  }
  for (double w : weights) {
    if (!(w > 0.0)) {
      throw std::invalid_argument("block_min_cost: weights must be positive");
    }
  }
  unsigned target = 0;
  for (auto bit : target_bits) {
    target = (target << 1) | (bit & 1u);
  }
  return solve_block(cover_bits.data(), weights.data(), target, cfg);
}

StcOutcome stc_total_cost(const Image& img, const StcConfig& cfg, const BitVec& payload) {
  PreparedBlocks prep = prepare_blocks(img, cfg, payload.size());
  return solve_payload(prep, cfg, payload, true);
}

StcOutcome stc_shape_select(const Image& img, const BitVec& message,
                            const ShapingConfig& shaping_cfg, const StcConfig& stc_cfg) {
  if (shaping_cfg.k > kMaxShapingBits) {
    throw std::invalid_argument("stc_shape_select: k exceeds the candidate cap");
  }
  PreparedBlocks prep = prepare_blocks(img, stc_cfg, message.size() + shaping_cfg.k);
  std::size_t family = std::size_t{1} << shaping_cfg.k;
  StcOutcome best;
  for (std::uint32_t h = 0; h < family; ++h) {
    BitVec payload = build_payload(h, message, shaping_cfg);
    StcOutcome outcome = solve_payload(prep, stc_cfg, payload, true);
    outcome.chosen_h = h;
    if (h == 0 || outcome.total_cost < best.total_cost) {  // smallest-h ties
      best = std::move(outcome);
    }
  }
  return best;
}

}  // namespace steg
