#include "edgeforge/filtering.hpp"

#include <cmath>
#include <stdexcept>

namespace edgeforge {

GaussianKernel build_gaussian_kernel(double sigma) {
  if (!std::isfinite(sigma) || sigma <= 0.0) {
    throw std::invalid_argument("gaussian sigma must be positive and finite");
  }
  GaussianKernel k;
  k.sigma = sigma;
  k.radius = static_cast<std::size_t>(std::ceil(3.0 * sigma));
  k.weights.resize(2 * k.radius + 1);

  const double denom = 2.0 * sigma * sigma;
  double sum = 0.0;
  for (std::size_t i = 0; i < k.weights.size(); ++i) {
    const double d = static_cast<double>(i) - static_cast<double>(k.radius);
    k.weights[i] = std::exp(-d * d / denom);
    sum += k.weights[i];
  }
  for (auto& w : k.weights) w /= sum;
  return k;
}

GrayImage gaussian_blur(const GrayImage& img, const GaussianKernel& kernel, const WorkerConfig& cfg,
                        BandProfile* profile) {
  const std::size_t w = img.width();
  const std::size_t h = img.height();
  const auto r = static_cast<std::ptrdiff_t>(kernel.radius);
  const std::size_t taps = kernel.weights.size();

  GrayImage tmp(w, h);
  auto times = for_each_row(h, cfg, [&](std::size_t y) {
    const auto yy = static_cast<std::ptrdiff_t>(y);
    auto out = tmp.row(y);
    for (std::size_t x = 0; x < w; ++x) {
      const auto xx = static_cast<std::ptrdiff_t>(x);
      double acc = 0.0;
      for (std::size_t k = 0; k < taps; ++k) {
        acc += kernel.weights[k] * img.clamped(xx + static_cast<std::ptrdiff_t>(k) - r, yy);
      }
      out[x] = acc;
    }
  });
  if (profile) profile->accumulate(times);

  GrayImage result(w, h);
  times = for_each_row(h, cfg, [&](std::size_t y) {
    const auto yy = static_cast<std::ptrdiff_t>(y);
    auto out = result.row(y);
    for (std::size_t x = 0; x < w; ++x) {
      const auto xx = static_cast<std::ptrdiff_t>(x);
      double acc = 0.0;
      for (std::size_t k = 0; k < taps; ++k) {
        acc += kernel.weights[k] * tmp.clamped(xx, yy + static_cast<std::ptrdiff_t>(k) - r);
      }
      out[x] = acc;
    }
  });
  if (profile) profile->accumulate(times);
  return result;
}

}  // namespace edgeforge
