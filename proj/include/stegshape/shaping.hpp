#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "stegshape/bits.hpp"
#include "stegshape/image.hpp"
#include "stegshape/metrics.hpp"

namespace steg {

enum class Objective { KLHistogram, SyndromeCost };

// Guard against 2^k candidate blowup.
inline constexpr unsigned kMaxShapingBits = 24;

struct ShapingConfig {
  unsigned k = 0;                 // index bit count; candidate family size is 2^k
  std::uint64_t session_seed = 0; // mask stream seed shared by encoder and decoder
  Objective objective = Objective::KLHistogram;
};

struct CandidateScore {
  std::uint32_t h;
  double value;
};

struct ShapingResult {
  std::uint32_t chosen_h = 0;
  BitVec payload;        // length N + k, decodes back to the original message
  Image stego;
  double objective_value = 0.0;
  std::vector<CandidateScore> per_candidate;  // exactly 2^k entries
};

// k-bit binary representation of h, most significant bit first.
BitVec bin_index(std::uint32_t h, unsigned k);

// Candidate payload bin_k(h) || (s ^ mask(session_seed, h)). k = 0 is the
// identity family: the payload is the unshaped message and no mask is
// applied. For k >= 1 every index carries a genuine mask, h = 0 included, so
// the candidate family need not contain the baseline and per-run gains may
// be negative.
BitVec build_payload(std::uint32_t h, const BitVec& message, const ShapingConfig& cfg);

// k zero index bits followed by the unshaped message: the fair same-length
// comparison payload. Independent of any session seed.
BitVec fair_baseline_payload(const BitVec& message, unsigned k);

// Inverse of build_payload: reads the index, regenerates the mask, recovers
// the message.
std::pair<std::uint32_t, BitVec> decode_payload(const BitVec& payload, unsigned k,
                                                std::uint64_t session_seed);

using StegoObjective = std::function<double(const Image& stego)>;

// D_KL(cover || stego) over smoothed intensity histograms.
StegoObjective kl_objective(const Image& cover);

// Exhaustive search over all 2^k candidate payloads: each is embedded with
// embed_lsb along `path` and scored by `objective`; the minimizer wins, ties
// broken by smallest h so serial and parallel schedules agree.
ShapingResult shape_select(const Image& cover, const BitVec& message,
                           const ShapingConfig& cfg, const PositionList& path,
                           const StegoObjective& objective);

struct IndexStats {
  double mean_normalized_h = 0.0;    // mean of h / (2^k - 1)
  double largest_bucket_share = 0.0; // most frequent index / number of runs
};

IndexStats index_stat(const std::vector<std::uint32_t>& chosen, unsigned k);

}  // namespace steg
