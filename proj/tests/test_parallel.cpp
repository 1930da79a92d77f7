#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <cstdint>
#include <random>
#include <string>
#include <stdexcept>

#include "edgeforge/parallel.hpp"

using namespace edgeforge;

namespace {

WorkerConfig cfg(std::size_t workers, std::size_t granularity = 1) {
  return WorkerConfig{workers, granularity};
}

std::vector<std::size_t> sizes(const std::vector<Band>& bands) {
  std::vector<std::size_t> out;
  for (const auto& b : bands) out.push_back(b.size());
  return out;
}

// Checksum of a pseudo-random row derived from a fixed seed.
std::uint64_t row_checksum(std::size_t row) {
  std::mt19937_64 rng(0xC0FFEE + row);
  std::uint64_t acc = 0;
  for (int i = 0; i < 256; ++i) acc = acc * 1099511628211ull ^ rng();
  return acc;
}

}  // namespace

TEST_CASE("WorkerConfig validation") {
  CHECK_THROWS_AS(cfg(0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(cfg(1, 0).validate(), std::invalid_argument);
  CHECK_NOTHROW(cfg(3, 5).validate());
  CHECK(WorkerConfig::detected().workers >= 1);
  CHECK(WorkerConfig::detected().band_granularity == 16);
}

TEST_CASE("plan_bands examples") {
  CHECK(plan_bands(8, cfg(4)) == std::vector<Band>{{0, 2}, {2, 4}, {4, 6}, {6, 8}});
  CHECK(sizes(plan_bands(7, cfg(4))) == std::vector<std::size_t>{2, 2, 2, 1});
  CHECK(plan_bands(3, cfg(8, 2)) == std::vector<Band>{{0, 2}, {2, 3}});
  CHECK(plan_bands(1, cfg(8, 16)) == std::vector<Band>{{0, 1}});
  CHECK(plan_bands(100, cfg(1)) == std::vector<Band>{{0, 100}});
}

TEST_CASE("plan_bands partitions every height exactly (property)") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t height = 1 + rng() % 300;
    const auto c = cfg(1 + rng() % 16, 1 + rng() % 40);
    const auto bands = plan_bands(height, c);
    REQUIRE(!bands.empty());
    CHECK(bands.front().begin == 0);
    CHECK(bands.back().end == height);
    CHECK(bands.size() <= c.workers);
    CHECK(bands.size() <= std::max<std::size_t>(1, (height + c.band_granularity - 1) / c.band_granularity));
    std::size_t small = 0;
    for (std::size_t i = 0; i < bands.size(); ++i) {
      CHECK(bands[i].size() >= 1);
      if (i > 0) CHECK(bands[i].begin == bands[i - 1].end);
      if (bands[i].size() < c.band_granularity) ++small;
    }
    // At most one undersized band, and only as the trailing remainder.
    CHECK(small <= 1);
    if (small == 1) CHECK(bands.back().size() < c.band_granularity);
    if (small == 0) {
      const auto [lo, hi] = std::ranges::minmax(sizes(bands));
      CHECK(hi - lo <= 1);
    }
  }
}

TEST_CASE("parallel_row_map matches sequential execution") {
  const auto square = [](std::size_t r) { return r * r; };
  CHECK(parallel_row_map<std::size_t>(4, cfg(1), square) == std::vector<std::size_t>{0, 1, 4, 9});
  CHECK(parallel_row_map<std::size_t>(4, cfg(4), square) == std::vector<std::size_t>{0, 1, 4, 9});

  const auto oracle = parallel_row_map<std::uint64_t>(1000, cfg(1), row_checksum);
  for (std::size_t w : {1, 2, 4, 8}) {
    CHECK(parallel_row_map<std::uint64_t>(1000, cfg(w, 16), row_checksum) == oracle);
  }
}

TEST_CASE("floating-point row outputs are bit-identical for workers 1..16") {
  const auto row_fn = [](std::size_t r) {
    double acc = 0.0;
    for (int i = 1; i < 200; ++i) acc += std::sin(static_cast<double>(r * i)) / i;
    return acc;
  };
  const auto oracle = parallel_row_map<double>(333, cfg(1), row_fn);
  for (std::size_t w = 1; w <= 16; ++w) {
    for (std::size_t g : {1, 7, 16, 400}) {
      const auto got = parallel_row_map<double>(333, cfg(w, g), row_fn);
      CHECK(std::memcmp(got.data(), oracle.data(), got.size() * sizeof(double)) == 0);
    }
  }
}

TEST_CASE("every row is processed exactly once") {
  std::vector<std::atomic<int>> hits(517);
  for_each_row(hits.size(), cfg(6, 3), [&](std::size_t r) { hits[r].fetch_add(1); });
  for (const auto& h : hits) CHECK(h.load() == 1);
}

TEST_CASE("for_each_band reports one time per band") {
  const auto times = for_each_band(64, cfg(4, 4), [](std::size_t, Band) {});
  CHECK(times.size() == 4);
}

TEST_CASE("failures propagate after in-flight work stops") {
  std::atomic<int> processed{0};
  CHECK_THROWS_WITH_AS(for_each_row(400, cfg(4, 1),
                                    [&](std::size_t r) {
                                      if (r == 150) throw std::runtime_error("row 150 failed");
                                      processed.fetch_add(1);
                                    }),
                       "row 150 failed", std::runtime_error);
  CHECK(processed.load() < 400);

  CHECK_THROWS_AS(for_each_row(10, cfg(1), [](std::size_t) { throw std::logic_error("x"); }),
                  std::logic_error);
}

TEST_CASE("parallel_band_reduce folds partials in band order") {
  // String concatenation is order-sensitive, so any reordering would show.
  const auto result = parallel_band_reduce(
      10, cfg(4, 1), std::string{},
      [](Band b) { return std::to_string(b.begin) + "-" + std::to_string(b.end) + ";"; },
      [](const std::string& a, const std::string& b) { return a + b; });
  CHECK(result == "0-3;3-6;6-8;8-10;");
}

TEST_CASE("BandProfile evenness") {
  BandProfile p;
  CHECK(p.evenness() == 1.0);
  using ns = std::chrono::nanoseconds;
  p.accumulate({ns{100}, ns{200}});
  CHECK(p.evenness() == doctest::Approx(2.0));
  p.accumulate({ns{100}, ns{0}});
  CHECK(p.evenness() == doctest::Approx(1.0));
}
