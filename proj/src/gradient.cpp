#include "edgeforge/gradient.hpp"

#include <cmath>
#include <numbers>

namespace edgeforge {

Orientation quantize_orientation(double gx, double gy) noexcept {
  if (gx == 0.0 && gy == 0.0) return Orientation::Deg0;
  double angle = std::atan2(gy, gx) * (180.0 / std::numbers::pi);
  if (angle < 0.0) angle += 180.0;
  if (angle >= 180.0) angle -= 180.0;
  const auto bin = static_cast<int>(std::floor((angle + 22.5) / 45.0)) % 4;
  return static_cast<Orientation>(bin);
}

GradientField sobel(const GrayImage& img, const WorkerConfig& cfg, BandProfile* profile) {
  GradientField g;
  g.width = img.width();
  g.height = img.height();
  const std::size_t n = img.size();
  g.gx.resize(n);
  g.gy.resize(n);
  g.magnitude.resize(n);
  g.orientation.resize(n);

  const auto times = for_each_row(g.height, cfg, [&](std::size_t y) {
    const auto yy = static_cast<std::ptrdiff_t>(y);
    for (std::size_t x = 0; x < g.width; ++x) {
      const auto xx = static_cast<std::ptrdiff_t>(x);
      const double tl = img.clamped(xx - 1, yy - 1);
      const double tc = img.clamped(xx, yy - 1);
      const double tr = img.clamped(xx + 1, yy - 1);
      const double ml = img.clamped(xx - 1, yy);
      const double mr = img.clamped(xx + 1, yy);
      const double bl = img.clamped(xx - 1, yy + 1);
      const double bc = img.clamped(xx, yy + 1);
      const double br = img.clamped(xx + 1, yy + 1);

      const double gx = (tr - tl) + 2.0 * (mr - ml) + (br - bl);
      const double gy = (bl - tl) + 2.0 * (bc - tc) + (br - tr);
      const std::size_t i = g.index(x, y);
      g.gx[i] = gx;
      g.gy[i] = gy;
      g.magnitude[i] = std::sqrt(gx * gx + gy * gy);
      g.orientation[i] = quantize_orientation(gx, gy);
    }
  });
  if (profile) profile->accumulate(times);
  return g;
}

GrayImage laplacian(const GrayImage& img, const WorkerConfig& cfg, BandProfile* profile) {
  GrayImage out(img.width(), img.height());
  const auto times = for_each_row(img.height(), cfg, [&](std::size_t y) {
    const auto yy = static_cast<std::ptrdiff_t>(y);
    auto row = out.row(y);
    for (std::size_t x = 0; x < img.width(); ++x) {
      const auto xx = static_cast<std::ptrdiff_t>(x);
      row[x] = img.clamped(xx + 1, yy) + img.clamped(xx - 1, yy) + img.clamped(xx, yy + 1) +
               img.clamped(xx, yy - 1) - 4.0 * img.clamped(xx, yy);
    }
  });
  if (profile) profile->accumulate(times);
  return out;
}

}  // namespace edgeforge
