#pragma once

#include <cstddef>
#include <vector>

#include "edgeforge/image.hpp"
#include "edgeforge/parallel.hpp"

namespace edgeforge {

/// Sampled, normalized 1-D Gaussian with 2*radius+1 taps.
struct GaussianKernel {
  double sigma = 0.0;
  std::size_t radius = 0;
  std::vector<double> weights;
};

/// radius = ceil(3*sigma); weights[i] proportional to exp(-(i-radius)^2 / (2 sigma^2)),
/// normalized to sum to one. Throws std::invalid_argument for sigma <= 0 or non-finite.
GaussianKernel build_gaussian_kernel(double sigma);

/// Separable blur: horizontal pass into an intermediate image, then a vertical
/// pass, each parallel over output rows. Borders replicate. Taps accumulate
/// left to right (top to bottom) in a fixed order.
GrayImage gaussian_blur(const GrayImage& img, const GaussianKernel& kernel, const WorkerConfig& cfg,
                        BandProfile* profile = nullptr);

}  // namespace edgeforge
