#include "stegshape/shaping.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

#include "stegshape/lsb.hpp"
#include "stegshape/rng.hpp"

namespace steg {

namespace {

void check_k(unsigned k) {
  if (k > kMaxShapingBits) {
    throw std::invalid_argument("shaping: k exceeds the 24-bit candidate cap");
  }
}

}  // namespace

BitVec bin_index(std::uint32_t h, unsigned k) {
  check_k(k);
  if (k < 32 && (static_cast<std::uint64_t>(h) >> k) != 0) {
    throw std::invalid_argument("bin_index: index out of range for k bits");
  }
  BitVec bits(k);
  for (unsigned i = 0; i < k; ++i) {
    bits[i] = static_cast<std::uint8_t>((h >> (k - 1 - i)) & 1u);
  }
  return bits;
}

BitVec build_payload(std::uint32_t h, const BitVec& message, const ShapingConfig& cfg) {
  BitVec payload = bin_index(h, cfg.k);
  payload.reserve(cfg.k + message.size());
  if (cfg.k == 0) {
    payload.insert(payload.end(), message.begin(), message.end());
    return payload;
  }
  BitVec mask = mask_bits(cfg.session_seed, h, message.size());
  for (std::size_t i = 0; i < message.size(); ++i) {
    payload.push_back(message[i] ^ mask[i]);
  }
  return payload;
}

BitVec fair_baseline_payload(const BitVec& message, unsigned k) {
  check_k(k);
  BitVec payload(k, 0);
  payload.insert(payload.end(), message.begin(), message.end());
  return payload;
}

std::pair<std::uint32_t, BitVec> decode_payload(const BitVec& payload, unsigned k,
                                                std::uint64_t session_seed) {
  check_k(k);
  if (payload.size() < k) {
    throw std::invalid_argument("decode_payload: payload shorter than index");
  }
  std::uint32_t h = 0;
  for (unsigned i = 0; i < k; ++i) {
    h = (h << 1) | payload[i];
  }
  BitVec body(payload.begin() + k, payload.end());
  if (k == 0) {
    return {0, body};
  }
  BitVec mask = mask_bits(session_seed, h, body.size());
  return {h, xor_bits(body, mask)};
}

StegoObjective kl_objective(const Image& cover) {
  auto p = std::make_shared<Dist256>(smooth_normalize(histogram(cover)));
  return [p](const Image& stego) {
    return kl_div(*p, smooth_normalize(histogram(stego)));
  };
}

ShapingResult shape_select(const Image& cover, const BitVec& message,
                           const ShapingConfig& cfg, const PositionList& path,
                           const StegoObjective& objective) {
  check_k(cfg.k);
  if (path.size() < message.size() + cfg.k) {
    throw std::invalid_argument("shape_select: path too short for payload");
  }
  std::size_t family = std::size_t{1} << cfg.k;
  ShapingResult result;
  result.per_candidate.reserve(family);
  for (std::uint32_t h = 0; h < family; ++h) {
    BitVec payload = build_payload(h, message, cfg);
    Image stego = embed_lsb(cover, payload, path);
    double value = objective(stego);
    result.per_candidate.push_back({h, value});
    if (h == 0 || value < result.objective_value) {  // ties keep the smallest h
      result.chosen_h = h;
      result.objective_value = value;
      result.payload = std::move(payload);
      result.stego = std::move(stego);
    }
  }
  return result;
}

IndexStats index_stat(const std::vector<std::uint32_t>& chosen, unsigned k) {
  check_k(k);
  if (k == 0) {
    throw std::invalid_argument("index_stat: k must be at least 1");
  }
  if (chosen.empty()) {
    throw std::invalid_argument("index_stat: no runs");
  }
  double denom = static_cast<double>((std::size_t{1} << k) - 1);
  double sum = 0.0;
  for (auto h : chosen) {
    sum += static_cast<double>(h) / denom;
  }
  std::vector<std::uint32_t> sorted = chosen;
  std::sort(sorted.begin(), sorted.end());
  std::size_t best = 1, run = 1;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    run = (sorted[i] == sorted[i - 1]) ? run + 1 : 1;
    best = std::max(best, run);
  }
  return {sum / static_cast<double>(chosen.size()),
          static_cast<double>(best) / static_cast<double>(chosen.size())};
}

}  // namespace steg
