#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "edgeforge/image.hpp"
#include "edgeforge/parallel.hpp"

namespace edgeforge {

/// Gradient direction folded into [0, 180) and snapped to 45 degree bins.
enum class Orientation : std::uint8_t { Deg0 = 0, Deg45 = 1, Deg90 = 2, Deg135 = 3 };

constexpr int degrees(Orientation o) noexcept { return 45 * static_cast<int>(o); }

/// Per-pixel Sobel responses (unnormalized), Euclidean magnitude and
/// quantized orientation, all row-major with the source image's dimensions.
struct GradientField {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> gx;
  std::vector<double> gy;
  std::vector<double> magnitude;
  std::vector<Orientation> orientation;

  std::size_t index(std::size_t x, std::size_t y) const noexcept { return y * width + x; }
};

/// atan2(gy, gx) folded into [0, 180); nearest bin with ties going to the
/// larger angle (157.5 wraps to 0). (0, 0) maps to Deg0.
Orientation quantize_orientation(double gx, double gy) noexcept;

/// 3x3 Sobel, Kx = [-1 0 1; -2 0 2; -1 0 1], Ky = Kx transposed, replicate borders.
GradientField sobel(const GrayImage& img, const WorkerConfig& cfg, BandProfile* profile = nullptr);

/// 5-point Laplacian stencil with replicate borders.
GrayImage laplacian(const GrayImage& img, const WorkerConfig& cfg, BandProfile* profile = nullptr);

}  // namespace edgeforge
