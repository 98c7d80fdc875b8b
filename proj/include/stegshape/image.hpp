#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "stegshape/rng.hpp"

namespace steg {

// 8-bit grayscale image, row-major.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  std::uint8_t at(int row, int col) const {
    return pixels[static_cast<std::size_t>(row) * width + col];
  }
  std::uint8_t& at(int row, int col) {
    return pixels[static_cast<std::size_t>(row) * width + col];
  }
  std::size_t pixel_count() const { return pixels.size(); }
};

enum class CoverModel { Uniform, Smooth, Gradient, Bimodal };

const char* cover_model_name(CoverModel model);
CoverModel parse_cover_model(const std::string& name);

// Generator constants. Fixed defaults keep campaigns reproducible; tests may
// override (e.g. gradient_sigma = 0 gives a noiseless ramp).
struct CoverParams {
  int blur_passes = 3;
  double gradient_sigma = 16.0;
  int bimodal_low = 80;
  int bimodal_high = 176;
  double bimodal_sigma = 12.0;
};

using Counts256 = std::array<std::uint64_t, 256>;

// Horizontal neighbour-pair counts, 256x256.
struct Cooc256 {
  std::vector<std::uint64_t> counts = std::vector<std::uint64_t>(256 * 256, 0);

  std::uint64_t at(int a, int b) const { return counts[a * 256 + b]; }
  std::uint64_t& at(int a, int b) { return counts[a * 256 + b]; }
  std::uint64_t total() const;
};

Image generate_cover(CoverModel model, int width, int height, SplitMix64& gen,
                     const CoverParams& params = {});

Counts256 histogram(const Image& img);
Cooc256 cooccurrence(const Image& img);

// Binary PGM (P5), maxval 255, whitespace-separated header tokens.
Image read_pgm(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> write_pgm(const Image& img);
Image read_pgm_file(const std::string& path);
void write_pgm_file(const std::string& path, const Image& img);

}  // namespace steg
