#include "edgeforge/hysteresis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

#include "edgeforge/disjoint_set.hpp"

namespace edgeforge {

namespace {

constexpr std::uint32_t kNoComponent = std::numeric_limits<std::uint32_t>::max();

bool is_candidate(EdgeLabel l) { return l != EdgeLabel::None; }

void check_labels(const EdgeMap& map) {
  if (map.labels.size() != map.width * map.height) {
    throw std::invalid_argument("edge map labels do not match its dimensions");
  }
}

}  // namespace

void Thresholds::validate() const {
  if (!std::isfinite(low) || !std::isfinite(high) || low < 0.0 || high < 0.0) {
    throw std::invalid_argument("thresholds must be finite and non-negative");
  }
  if (low > high) {
    throw std::invalid_argument("low threshold " + std::to_string(low) + " exceeds high threshold " +
                                std::to_string(high));
  }
}

std::size_t EdgeMap::edge_count() const {
  return static_cast<std::size_t>(std::ranges::count(final, std::uint8_t{1}));
}

EdgeMap double_threshold(const ThinnedField& thin, const Thresholds& t) {
  t.validate();
  EdgeMap map;
  map.width = thin.width;
  map.height = thin.height;
  map.labels.resize(thin.magnitude.size());
  for (std::size_t i = 0; i < thin.magnitude.size(); ++i) {
    const double m = thin.magnitude[i];
    map.labels[i] = m >= t.high ? EdgeLabel::Strong : m >= t.low ? EdgeLabel::Weak : EdgeLabel::None;
  }
  return map;
}

Thresholds auto_thresholds(const ThinnedField& thin, const WorkerConfig& cfg, double high_ratio,
                           double low_ratio) {
  const double peak = parallel_band_reduce(
      thin.height, cfg, 0.0,
      [&](Band band) {
        double m = 0.0;
        for (std::size_t i = band.begin * thin.width; i < band.end * thin.width; ++i) {
          m = std::max(m, thin.magnitude[i]);
        }
        return m;
      },
      [](double a, double b) { return std::max(a, b); });
  Thresholds t;
  t.high = high_ratio * peak;
  t.low = low_ratio * t.high;
  t.validate();
  return t;
}

EdgeMap trace_edges(const EdgeMap& map) {
  check_labels(map);
  EdgeMap out = map;
  out.final.assign(map.labels.size(), 0);

  const auto w = static_cast<std::ptrdiff_t>(map.width);
  const auto h = static_cast<std::ptrdiff_t>(map.height);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < map.labels.size(); ++i) {
    if (map.labels[i] == EdgeLabel::Strong) {
      out.final[i] = 1;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    const std::size_t p = queue.front();
    queue.pop_front();
    const auto px = static_cast<std::ptrdiff_t>(p % map.width);
    const auto py = static_cast<std::ptrdiff_t>(p / map.width);
    for (std::ptrdiff_t dy = -1; dy <= 1; ++dy) {
      for (std::ptrdiff_t dx = -1; dx <= 1; ++dx) {
        const auto nx = px + dx;
        const auto ny = py + dy;
        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
        const auto q = static_cast<std::size_t>(ny * w + nx);
        if (!out.final[q] && is_candidate(map.labels[q])) {
          out.final[q] = 1;
          queue.push_back(q);
        }
      }
    }
  }
  return out;
}

EdgeMap trace_edges_parallel(const EdgeMap& map, const WorkerConfig& cfg, BandProfile* profile) {
  check_labels(map);
  const std::size_t w = map.width;
  const std::size_t n = map.labels.size();
  if (n >= kNoComponent) throw std::length_error("edge map too large for 32-bit component ids");

  // Component id of each candidate pixel: the flat index of the first pixel
  // of its band-local component. Ids are unique without coordination.
  std::vector<std::uint32_t> component(n, kNoComponent);
  std::vector<std::uint8_t> has_strong(n, 0);

  auto times = for_each_band(map.height, cfg, [&](std::size_t, Band band) {
    std::vector<std::size_t> stack;
    for (std::size_t seed = band.begin * w; seed < band.end * w; ++seed) {
      if (!is_candidate(map.labels[seed]) || component[seed] != kNoComponent) continue;
      const auto id = static_cast<std::uint32_t>(seed);
      component[seed] = id;
      stack.push_back(seed);
      while (!stack.empty()) {
        const std::size_t p = stack.back();
        stack.pop_back();
        if (map.labels[p] == EdgeLabel::Strong) has_strong[id] = 1;
        const std::size_t px = p % w;
        const std::size_t py = p / w;
        const std::size_t y0 = py > band.begin ? py - 1 : py;
        const std::size_t y1 = py + 1 < band.end ? py + 1 : py;
        const std::size_t x0 = px > 0 ? px - 1 : px;
        const std::size_t x1 = px + 1 < w ? px + 1 : px;
        for (std::size_t y = y0; y <= y1; ++y) {
          for (std::size_t x = x0; x <= x1; ++x) {
            const std::size_t q = y * w + x;
            if (is_candidate(map.labels[q]) && component[q] == kNoComponent) {
              component[q] = id;
              stack.push_back(q);
            }
          }
        }
      }
    }
  });
  if (profile) profile->accumulate(times);

  // Serial merge across band seams.
  DisjointSet sets(static_cast<std::uint32_t>(n));
  const auto bands = plan_bands(map.height, cfg);
  for (std::size_t b = 1; b < bands.size(); ++b) {
    const std::size_t above = bands[b].begin - 1;
    const std::size_t below = bands[b].begin;
    for (std::size_t x = 0; x < w; ++x) {
      const auto top = component[above * w + x];
      if (top == kNoComponent) continue;
      const std::size_t x0 = x > 0 ? x - 1 : x;
      const std::size_t x1 = x + 1 < w ? x + 1 : x;
      for (std::size_t bx = x0; bx <= x1; ++bx) {
        const auto bottom = component[below * w + bx];
        if (bottom != kNoComponent) sets.unite(top, bottom);
      }
    }
  }
  std::vector<std::uint8_t> root_strong(n, 0);
  for (std::uint32_t c = 0; c < n; ++c) {
    if (component[c] == c && has_strong[c]) root_strong[sets.find(c)] = 1;
  }
  for (std::uint32_t c = 0; c < n; ++c) {
    if (component[c] == c) has_strong[c] = root_strong[sets.find(c)];
  }

  EdgeMap out = map;
  out.final.assign(n, 0);
  times = for_each_row(map.height, cfg, [&](std::size_t y) {
    for (std::size_t i = y * w; i < (y + 1) * w; ++i) {
      if (component[i] != kNoComponent) out.final[i] = has_strong[component[i]];
    }
  });
  if (profile) profile->accumulate(times);
  return out;
}

GrayImage edge_image(const EdgeMap& map) {
  std::vector<double> px(map.width * map.height, 0.0);
  for (std::size_t i = 0; i < map.final.size() && i < px.size(); ++i) {
    if (map.final[i]) px[i] = 255.0;
  }
  return GrayImage(map.width, map.height, std::move(px));
}

}  // namespace edgeforge
