#include <doctest.h>

#include <stdexcept>

#include <random>

#include "edgeforge/hysteresis.hpp"
#include "reference.hpp"

using namespace edgeforge;

namespace {

constexpr auto N = EdgeLabel::None;
constexpr auto W = EdgeLabel::Weak;
constexpr auto S = EdgeLabel::Strong;

EdgeMap labels(std::size_t w, std::size_t h, std::vector<EdgeLabel> l) {
  EdgeMap m;
  m.width = w;
  m.height = h;
  m.labels = std::move(l);
  return m;
}

ThinnedField thin(std::size_t w, std::size_t h, std::vector<double> m) { return {w, h, std::move(m)}; }

ThinnedField random_thin(std::mt19937_64& rng, std::size_t w, std::size_t h) {
  std::uniform_real_distribution<double> u(0.0, 100.0);
  std::vector<double> m(w * h);
  for (auto& v : m) v = rng() % 3 == 0 ? 0.0 : u(rng);
  return thin(w, h, m);
}

// Weak chain snaking down one column and up the next, so it crosses every
// band seam several times; the only Strong pixel sits at the far end.
EdgeMap snake(std::size_t w, std::size_t h) {
  EdgeMap m = labels(w, h, std::vector<EdgeLabel>(w * h, N));
  for (std::size_t x = 0; x < w; x += 2) {
    for (std::size_t y = 0; y < h; ++y) m.labels[y * w + x] = W;
    if (x + 1 < w) {
      const std::size_t turn = (x / 2) % 2 == 0 ? h - 1 : 0;
      m.labels[turn * w + x + 1] = W;
    }
  }
  const std::size_t last = (w - 1) / 2 * 2;
  const std::size_t end_row = (last / 2) % 2 == 0 ? h - 1 : 0;
  m.labels[end_row * w + last] = S;
  return m;
}

void check_edge_invariants(const EdgeMap& m) {
  REQUIRE(m.final.size() == m.labels.size());
  const auto reach = reference::reachable_from_strong(m);
  for (std::size_t i = 0; i < m.labels.size(); ++i) {
    if (m.final[i]) CHECK(m.labels[i] != N);
    if (m.labels[i] == S) CHECK(m.final[i] == 1);
    CHECK(m.final[i] == reach[i]);
  }
}

}  // namespace

TEST_CASE("Thresholds validation") {
  CHECK_THROWS_AS((Thresholds{5, 2}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((Thresholds{-1, 2}.validate()), std::invalid_argument);
  CHECK_NOTHROW((Thresholds{0, 0}.validate()));
  CHECK_THROWS_AS(double_threshold(thin(1, 1, {1.0}), Thresholds{3, 1}), std::invalid_argument);
}

TEST_CASE("double_threshold boundary conventions") {
  CHECK(double_threshold(thin(3, 1, {0, 3, 6}), {2, 5}).labels == std::vector<EdgeLabel>{N, W, S});
  CHECK(double_threshold(thin(3, 1, {0, 3, 6}), {0, 0}).labels == std::vector<EdgeLabel>{S, S, S});
  CHECK(double_threshold(thin(3, 1, {5.0, 2.0, 1.999}), {2, 5}).labels == std::vector<EdgeLabel>{S, W, N});
  CHECK(double_threshold(thin(1, 1, {1}), {0, 1}).final.empty());
}

TEST_CASE("auto_thresholds derive from the peak") {
  const auto t = auto_thresholds(thin(2, 2, {0, 10, 50, 20}), WorkerConfig{2, 1});
  CHECK(t.high == doctest::Approx(10.0));
  CHECK(t.low == doctest::Approx(4.0));
  const auto z = auto_thresholds(thin(2, 1, {0, 0}), WorkerConfig{1, 1});
  CHECK(z.high == 0.0);
  CHECK(z.low == 0.0);
}

TEST_CASE("trace_edges examples") {
  SUBCASE("no strong seeds") {
    const auto out = trace_edges(labels(3, 2, {W, W, N, W, W, W}));
    for (auto f : out.final) CHECK(f == 0);
  }
  SUBCASE("row with an isolated weak pixel") {
    const auto out = trace_edges(labels(5, 1, {S, W, W, N, W}));
    CHECK(out.final == std::vector<std::uint8_t>{1, 1, 1, 0, 0});
  }
  SUBCASE("diagonal weak chain uses 8-connectivity") {
    std::vector<EdgeLabel> l(25, N);
    l[2 * 5 + 2] = S;
    l[1 * 5 + 1] = W;
    l[0] = W;
    l[3 * 5 + 4] = W;  // not adjacent to the chain
    const auto out = trace_edges(labels(5, 5, l));
    CHECK(out.final[0] == 1);
    CHECK(out.final[6] == 1);
    CHECK(out.final[12] == 1);
    CHECK(out.final[19] == 0);
    check_edge_invariants(out);
  }
}

TEST_CASE("banded tracing with one worker equals serial tracing") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 50; ++i) {
    const auto m = reference::random_labels(rng, 1 + rng() % 20, 1 + rng() % 20, 0.4, 0.05);
    CHECK(trace_edges_parallel(m, WorkerConfig{1, 1}).final == trace_edges(m).final);
  }
}

TEST_CASE("banded tracing equals serial tracing on random maps") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 1000; ++i) {
    const auto m = reference::random_labels(rng, 16, 16, 0.45, 0.03);
    const auto serial = trace_edges(m);
    for (std::size_t w : {2, 4, 8}) {
      REQUIRE(trace_edges_parallel(m, WorkerConfig{w, 1}).final == serial.final);
    }
    if (i < 100) check_edge_invariants(serial);
  }
}

TEST_CASE("snake chain crossing every seam is merged") {
  for (std::size_t w : {5, 8, 9}) {
    const auto m = snake(w, 16);
    const auto serial = trace_edges(m);
    CHECK(serial.edge_count() == static_cast<std::size_t>(std::ranges::count(m.labels, W) + 1));
    for (std::size_t workers : {2, 3, 4, 8, 16}) {
      CHECK(trace_edges_parallel(m, WorkerConfig{workers, 1}).final == serial.final);
    }
  }
}

TEST_CASE("threshold monotonicity") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 200; ++i) {
    const auto t = random_thin(rng, 1 + rng() % 16, 1 + rng() % 16);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    double a = u(rng);
    double b = u(rng);
    const double high = std::max(a, b);
    const double low = std::min(a, b);
    const double lower_low = low * 0.5;
    const double higher_high = high + (100.0 - high) * 0.5;

    const auto base = trace_edges(double_threshold(t, {low, high})).final;
    const auto more = trace_edges(double_threshold(t, {lower_low, high})).final;
    const auto fewer = trace_edges(double_threshold(t, {low, higher_high})).final;
    for (std::size_t p = 0; p < base.size(); ++p) {
      if (base[p]) CHECK(more[p] == 1);
      if (fewer[p]) CHECK(base[p] == 1);
    }
  }
}

TEST_CASE("edge_image marks final pixels") {
  auto m = trace_edges(labels(3, 1, {S, N, W}));
  const auto img = edge_image(m);
  CHECK(img.at(0, 0) == 255.0);
  CHECK(img.at(1, 0) == 0.0);
  CHECK(img.at(2, 0) == 0.0);
}

TEST_CASE("mismatched label buffer is rejected") {
  auto m = labels(3, 3, {S});
  CHECK_THROWS_AS(trace_edges(m), std::invalid_argument);
  CHECK_THROWS_AS(trace_edges_parallel(m, WorkerConfig{2, 1}), std::invalid_argument);
}
