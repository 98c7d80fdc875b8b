#include "stegshape/image.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "stegshape/errors.hpp"

namespace steg {

namespace {

int round_half_up(double v) { return static_cast<int>(std::floor(v + 0.5)); }

std::uint8_t clamp255(int v) {
  return static_cast<std::uint8_t>(std::clamp(v, 0, 255));
}

// One standard normal draw; consumes exactly two uniforms.
double gaussian(SplitMix64& gen) {
  double u1 = 1.0 - gen.next_f64();  // (0, 1], keeps the log finite
  double u2 = gen.next_f64();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Image uniform_cover(int width, int height, SplitMix64& gen) {
  Image img{width, height, std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height)};
  for (auto& p : img.pixels) {
    p = static_cast<std::uint8_t>(gen.next_u64() % 256);
  }
  return img;
}

// 3x3 box blur with edge replication, rounded half up.
Image box_blur(const Image& in) {
  Image out = in;
  for (int i = 0; i < in.height; ++i) {
    for (int j = 0; j < in.width; ++j) {
      int sum = 0;
      for (int di = -1; di <= 1; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          int r = std::clamp(i + di, 0, in.height - 1);
          int c = std::clamp(j + dj, 0, in.width - 1);
          sum += in.at(r, c);
        }
      }
      out.at(i, j) = clamp255(round_half_up(sum / 9.0));
    }
  }
  return out;
}

}  // namespace

const char* cover_model_name(CoverModel model) {
  switch (model) {
    case CoverModel::Uniform: return "uniform";
    case CoverModel::Smooth: return "smooth";
    case CoverModel::Gradient: return "gradient";
    case CoverModel::Bimodal: return "bimodal";
  }
  return "?";
}

CoverModel parse_cover_model(const std::string& name) {
  if (name == "uniform") return CoverModel::Uniform;
  if (name == "smooth") return CoverModel::Smooth;
  if (name == "gradient") return CoverModel::Gradient;
  if (name == "bimodal") return CoverModel::Bimodal;
  throw ConfigError("unknown cover model: " + name);
}

std::uint64_t Cooc256::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

Image generate_cover(CoverModel model, int width, int height, SplitMix64& gen,
                     const CoverParams& params) {
  if (width < 2 || height < 2) {
    throw std::invalid_argument("generate_cover: dimensions must be at least 2x2");
  }
  switch (model) {
    case CoverModel::Uniform:
      return uniform_cover(width, height, gen);
    case CoverModel::Smooth: {
      Image img = uniform_cover(width, height, gen);
      for (int pass = 0; pass < params.blur_passes; ++pass) {
        img = box_blur(img);
      }
      return img;
    }
    case CoverModel::Gradient: {
      Image img{width, height, std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height)};
      for (int i = 0; i < height; ++i) {
        for (int j = 0; j < width; ++j) {
          int ramp = round_half_up(255.0 * j / (width - 1));
          int noise = round_half_up(gaussian(gen) * params.gradient_sigma);
          img.at(i, j) = clamp255(ramp + noise);
        }
      }
      return img;
    }
    case CoverModel::Bimodal: {
      Image img{width, height, std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height)};
      for (auto& p : img.pixels) {
        int mode = gen.next_f64() < 0.5 ? params.bimodal_low : params.bimodal_high;
        p = clamp255(round_half_up(mode + params.bimodal_sigma * gaussian(gen)));
      }
      return img;
    }
  }
  throw std::invalid_argument("generate_cover: unknown model");
}

Counts256 histogram(const Image& img) {
  Counts256 counts{};
  for (auto p : img.pixels) {
    ++counts[p];
  }
  return counts;
}

Cooc256 cooccurrence(const Image& img) {
  if (img.width < 2) {
    throw std::invalid_argument("cooccurrence: width must be at least 2");
  }
  Cooc256 cooc;
  for (int i = 0; i < img.height; ++i) {
    for (int j = 0; j + 1 < img.width; ++j) {
      ++cooc.at(img.at(i, j), img.at(i, j + 1));
    }
  }
  return cooc;
}

namespace {

struct PgmScanner {
  const std::vector<std::uint8_t>& bytes;
  std::size_t pos = 0;

  std::string next_token() {
    while (pos < bytes.size() && std::isspace(bytes[pos])) {
      ++pos;
    }
    std::size_t start = pos;
    while (pos < bytes.size() && !std::isspace(bytes[pos])) {
      ++pos;
    }
    if (start == pos) {
      throw IoError("pgm: truncated header");
    }
    return std::string(bytes.begin() + start, bytes.begin() + pos);
  }

  int next_int() {
    std::string tok = next_token();
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw IoError("pgm: malformed header token '" + tok + "'");
    }
    return value;
  }
};

}  // namespace

Image read_pgm(const std::vector<std::uint8_t>& bytes) {
  PgmScanner scan{bytes};
  if (scan.next_token() != "P5") {
    throw IoError("pgm: not a binary P5 file");
  }
  int width = scan.next_int();
  int height = scan.next_int();
  int maxval = scan.next_int();
  if (width < 1 || height < 1) {
    throw IoError("pgm: bad dimensions");
  }
  if (maxval != 255) {
    throw IoError("pgm: only maxval 255 is supported");
  }
  // Exactly one whitespace byte separates the header from the raster.
  if (scan.pos >= bytes.size() || !std::isspace(bytes[scan.pos])) {
    throw IoError("pgm: missing raster separator");
  }
  ++scan.pos;
  std::size_t need = static_cast<std::size_t>(width) * height;
  if (bytes.size() - scan.pos < need) {
    throw IoError("pgm: truncated pixel data");
  }
  Image img{width, height, {}};
  img.pixels.assign(bytes.begin() + scan.pos, bytes.begin() + scan.pos + need);
  return img;
}

std::vector<std::uint8_t> write_pgm(const Image& img) {
  std::string header = "P5\n" + std::to_string(img.width) + " " +
                       std::to_string(img.height) + "\n255\n";
  std::vector<std::uint8_t> bytes(header.begin(), header.end());
  bytes.insert(bytes.end(), img.pixels.begin(), img.pixels.end());
  return bytes;
}

Image read_pgm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open image: " + path);
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return read_pgm(bytes);
}

void write_pgm_file(const std::string& path, const Image& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open output image: " + path);
  }
  auto bytes = write_pgm(img);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw IoError("write failed: " + path);
  }
}

}  // namespace steg
