#include <doctest.h>

#include <stdexcept>

#include <random>
#include <string>

#include "edgeforge/image.hpp"

using namespace edgeforge;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

std::vector<std::uint8_t> p5(const std::string& header, std::initializer_list<int> payload) {
  auto b = bytes_of(header);
  for (int v : payload) b.push_back(static_cast<std::uint8_t>(v));
  return b;
}

}  // namespace

TEST_CASE("GrayImage rejects invalid construction") {
  CHECK_THROWS_AS(GrayImage(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(GrayImage(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(GrayImage(2, 2, std::vector<double>(3)), std::invalid_argument);
  CHECK_THROWS_AS(GrayImage(1, 1, std::vector<double>{std::nan("")}), std::invalid_argument);
  CHECK_THROWS_AS(GrayImage(1, 1, std::numeric_limits<double>::infinity()), std::invalid_argument);
}

TEST_CASE("load_pgm decodes binary P5") {
  const auto img = load_pgm(p5("P5\n3 2\n255\n", {0, 128, 255, 10, 20, 30}));
  REQUIRE(img.width() == 3);
  REQUIRE(img.height() == 2);
  CHECK(img.at(0, 0) == 0.0);
  CHECK(img.at(1, 0) == 128.0);
  CHECK(img.at(2, 0) == 255.0);
  CHECK(img.at(0, 1) == 10.0);
  CHECK(img.at(1, 1) == 20.0);
  CHECK(img.at(2, 1) == 30.0);
}

TEST_CASE("load_pgm decodes ASCII P2 with comments") {
  const auto one = load_pgm(bytes_of("P2\n1 1\n255\n42\n"));
  CHECK(one.width() == 1);
  CHECK(one.at(0, 0) == 42.0);

  const auto img = load_pgm(bytes_of("P2\n# made by hand\n2 2 # dims\n# max\n100\n1 2\n3 # c\n 4"));
  CHECK(img == GrayImage(2, 2, std::vector<double>{1, 2, 3, 4}));
}

TEST_CASE("load_pgm keeps values verbatim for maxval below 255") {
  const auto img = load_pgm(p5("P5 2 1 15\n", {15, 7}));
  CHECK(img.at(0, 0) == 15.0);
  CHECK(img.at(1, 0) == 7.0);
}

TEST_CASE("load_pgm reports errors with byte offsets") {
  SUBCASE("truncated payload") {
    try {
      (void)load_pgm(p5("P5\n2 2\n255\n", {1, 2, 3}));
      FAIL("expected PgmError");
    } catch (const PgmError& e) {
      CHECK(std::string(e.what()).find("truncated") != std::string::npos);
      CHECK(e.offset() == 14);
    }
  }
  SUBCASE("bad magic") {
    try {
      (void)load_pgm(bytes_of("P6\n1 1\n255\n\0\0\0"));
      FAIL("expected PgmError");
    } catch (const PgmError& e) {
      CHECK(e.offset() == 0);
    }
    CHECK_THROWS_AS(load_pgm(bytes_of("P55\n1 1\n255\n")), PgmError);
    CHECK_THROWS_AS(load_pgm(bytes_of("")), PgmError);
  }
  SUBCASE("maxval too large") {
    try {
      (void)load_pgm(bytes_of("P2\n1 1\n65535\n1\n"));
      FAIL("expected PgmError");
    } catch (const PgmError& e) {
      CHECK(std::string(e.what()).find("maxval") != std::string::npos);
      CHECK(e.offset() == 7);
    }
  }
  SUBCASE("non-numeric header token") {
    try {
      (void)load_pgm(bytes_of("P2\n1 x\n255\n1\n"));
      FAIL("expected PgmError");
    } catch (const PgmError& e) {
      CHECK(e.offset() == 5);
    }
    CHECK_THROWS_AS(load_pgm(bytes_of("P2\n1 1a\n255\n1\n")), PgmError);
  }
  SUBCASE("truncated ASCII payload") {
    CHECK_THROWS_AS(load_pgm(bytes_of("P2\n2 1\n255\n1\n")), PgmError);
  }
  SUBCASE("sample above maxval") {
    CHECK_THROWS_AS(load_pgm(bytes_of("P2\n1 1\n10\n11\n")), PgmError);
  }
}

TEST_CASE("save_pgm writes P5 with half-away-from-zero rounding") {
  const auto zero = save_pgm(GrayImage(1, 1, 0.0));
  CHECK(zero == p5("P5\n1 1\n255\n", {0}));

  CHECK(save_pgm(GrayImage(1, 1, 254.6)).back() == 255);
  CHECK(save_pgm(GrayImage(1, 1, 2.5)).back() == 3);
  CHECK(save_pgm(GrayImage(1, 1, 255.49)).back() == 255);
  CHECK(save_pgm(GrayImage(1, 1, -0.5)).back() == 0);
  CHECK(save_pgm(GrayImage(1, 1, -0.49)).back() == 0);

  CHECK_THROWS_AS(save_pgm(GrayImage(1, 1, 255.5)), std::domain_error);
  CHECK_THROWS_AS(save_pgm(GrayImage(1, 1, -0.51)), std::domain_error);
}

TEST_CASE("load/save round-trip is the identity on 8-bit images") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t w = 1 + rng() % 17;
    const std::size_t h = 1 + rng() % 17;
    std::vector<double> px(w * h);
    for (auto& v : px) v = static_cast<double>(rng() % 256);
    const GrayImage img(w, h, px);
    const auto bytes = save_pgm(img);
    CHECK(load_pgm(bytes) == img);
    CHECK(save_pgm(load_pgm(bytes)) == bytes);
  }
}

TEST_CASE("sample_pixel_clamped replicates borders") {
  const GrayImage img(3, 3, std::vector<double>{0, 1, 2, 3, 4, 5, 6, 7, 8});
  CHECK(sample_pixel_clamped(img, -1, 0) == img.at(0, 0));
  CHECK(sample_pixel_clamped(img, 5, 5) == img.at(2, 2));
  CHECK(sample_pixel_clamped(img, 1, 1) == img.at(1, 1));
  CHECK(sample_pixel_clamped(img, -7, 2) == img.at(0, 2));
  CHECK(sample_pixel_clamped(img, 1, -3) == img.at(1, 0));

  // Agrees with direct indexing everywhere in range.
  for (std::size_t w = 1; w <= 5; ++w) {
    for (std::size_t h = 1; h <= 5; ++h) {
      GrayImage im(w, h);
      for (std::size_t i = 0; i < im.size(); ++i) im.pixels()[i] = static_cast<double>(i);
      for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
          CHECK(sample_pixel_clamped(im, static_cast<std::ptrdiff_t>(x), static_cast<std::ptrdiff_t>(y)) ==
                im.at(x, y));
        }
      }
    }
  }
}

TEST_CASE("transpose swaps axes") {
  const GrayImage img(3, 2, std::vector<double>{1, 2, 3, 4, 5, 6});
  const auto t = transpose(img);
  CHECK(t.width() == 2);
  CHECK(t.height() == 3);
  CHECK(t.at(1, 0) == 4.0);
  CHECK(t.at(0, 2) == 3.0);
  CHECK(transpose(t) == img);
}
