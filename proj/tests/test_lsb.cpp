#include <stdexcept>
#include <cstdlib>
#include <numeric>

#include "doctest.h"
#include "stegshape/lsb.hpp"
#include "stegshape/rng.hpp"

using namespace steg;

namespace {

Image random_cover(int w, int h, std::uint64_t seed) {
  SplitMix64 gen(seed);
  return generate_cover(CoverModel::Uniform, w, h, gen);
}

}  // namespace

TEST_SUITE("lsb") {

TEST_CASE("setting the lsb adjusts the pixel by at most one") {
  Image img{2, 1, {10, 10}};
  Image stego = embed_lsb(img, {1}, sequential_path(1));
  CHECK(stego.pixels[0] == 11);
  CHECK(stego.pixels[1] == 10);

  stego = embed_lsb(img, {0}, sequential_path(1));
  CHECK(stego.pixels[0] == 10);
}

TEST_CASE("embedding the existing lsbs is a fixed point") {
  Image cover = random_cover(16, 16, 8);
  PositionList path = sequential_path(100);
  BitVec payload(100);
  for (int i = 0; i < 100; ++i) {
    payload[i] = cover.pixels[i] & 1u;
  }
  Image stego = embed_lsb(cover, payload, path);
  CHECK(stego.pixels == cover.pixels);
}

TEST_CASE("only path pixels may change, each by at most one") {
  Image cover = random_cover(100, 100, 9);
  SplitMix64 gen(10);
  BitVec payload = random_bits(gen, 1008);
  Image stego = embed_lsb(cover, payload, sequential_path(1008));
  for (std::size_t i = 0; i < cover.pixel_count(); ++i) {
    int diff = std::abs(static_cast<int>(stego.pixels[i]) - static_cast<int>(cover.pixels[i]));
    if (i < 1008) {
      CHECK(diff <= 1);
    } else {
      CHECK(diff == 0);
    }
  }
}

TEST_CASE("extract inverts embed on sequential and keyed paths") {
  SplitMix64 gen(11);
  for (int trial = 0; trial < 1000; ++trial) {
    Image cover = random_cover(32, 32, gen.next_u64());
    std::size_t n = 1 + gen.next_u64() % 200;
    BitVec payload = random_bits(gen, n);
    PositionList path = (trial % 2 == 0)
                            ? sequential_path(n)
                            : keyed_path(gen.next_u64(), cover.pixel_count(), n);
    Image stego = embed_lsb(cover, payload, path);
    CHECK(extract_lsb(stego, n, path) == payload);
  }
}

TEST_CASE("extracting zero bits yields an empty vector") {
  Image cover = random_cover(4, 4, 12);
  CHECK(extract_lsb(cover, 0, sequential_path(4)).empty());
}

TEST_CASE("histogram mass is conserved by embedding") {
  Image cover = random_cover(50, 50, 13);
  SplitMix64 gen(14);
  BitVec payload = random_bits(gen, 500);
  Image stego = embed_lsb(cover, payload, sequential_path(500));
  Counts256 a = histogram(cover);
  Counts256 b = histogram(stego);
  CHECK(std::accumulate(a.begin(), a.end(), std::uint64_t{0}) ==
        std::accumulate(b.begin(), b.end(), std::uint64_t{0}));
}

TEST_CASE("extraction with the wrong path disagrees") {
  Image cover = random_cover(64, 64, 15);
  SplitMix64 gen(16);
  BitVec payload = random_bits(gen, 1000);
  PositionList right = keyed_path(1, cover.pixel_count(), 1000);
  PositionList wrong = keyed_path(2, cover.pixel_count(), 1000);
  Image stego = embed_lsb(cover, payload, right);
  CHECK(extract_lsb(stego, 1000, wrong) != payload);
}

TEST_CASE("size violations are rejected") {
  Image cover = random_cover(4, 4, 17);
  BitVec payload(5, 1);
  CHECK_THROWS_AS(embed_lsb(cover, payload, sequential_path(4)), std::invalid_argument);
  CHECK_THROWS_AS(extract_lsb(cover, 5, sequential_path(4)), std::invalid_argument);
  PositionList bad = {999};
  CHECK_THROWS_AS(embed_lsb(cover, {1}, bad), std::invalid_argument);
}

}  // TEST_SUITE
