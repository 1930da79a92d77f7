#pragma once

#include <cstdint>
#include <random>

#include "edgeforge/image.hpp"

namespace edgeforge::synthetic {

/// Uniform integer noise in [0, 255] from a seeded mt19937_64.
inline GrayImage noise(std::size_t width, std::size_t height, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  GrayImage img(width, height);
  for (auto& v : img.pixels()) v = static_cast<double>(rng() % 256);
  return img;
}

/// Columns x < step_column are `low`, the rest `high`.
inline GrayImage vertical_step(std::size_t width, std::size_t height, std::size_t step_column,
                               double low = 0.0, double high = 255.0) {
  GrayImage img(width, height);
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) img.at(x, y) = x < step_column ? low : high;
  }
  return img;
}

/// Filled disc of `inside` on an `outside` background.
inline GrayImage disc(std::size_t width, std::size_t height, double radius, double inside = 200.0,
                      double outside = 40.0) {
  GrayImage img(width, height, outside);
  const double cx = 0.5 * static_cast<double>(width - 1);
  const double cy = 0.5 * static_cast<double>(height - 1);
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      const double dx = static_cast<double>(x) - cx;
      const double dy = static_cast<double>(y) - cy;
      if (dx * dx + dy * dy <= radius * radius) img.at(x, y) = inside;
    }
  }
  return img;
}

}  // namespace edgeforge::synthetic
