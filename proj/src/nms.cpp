#include "edgeforge/nms.hpp"

#include <algorithm>

namespace edgeforge {

std::array<std::array<int, 2>, 2> suppression_neighbours(Orientation o) noexcept {
  switch (o) {
    case Orientation::Deg0:
      return {{{1, 0}, {-1, 0}}};
    case Orientation::Deg45:
      return {{{1, 1}, {-1, -1}}};
    case Orientation::Deg90:
      return {{{0, 1}, {0, -1}}};
    case Orientation::Deg135:
      return {{{-1, 1}, {1, -1}}};
  }
  return {{{1, 0}, {-1, 0}}};
}

ThinnedField non_max_suppress(const GradientField& grad, const WorkerConfig& cfg,
                              BandProfile* profile) {
  ThinnedField out;
  out.width = grad.width;
  out.height = grad.height;
  out.magnitude.assign(grad.magnitude.size(), 0.0);

  const auto w = static_cast<std::ptrdiff_t>(grad.width);
  const auto h = static_cast<std::ptrdiff_t>(grad.height);
  const auto mag_at = [&](std::ptrdiff_t x, std::ptrdiff_t y) {
    x = std::clamp<std::ptrdiff_t>(x, 0, w - 1);
    y = std::clamp<std::ptrdiff_t>(y, 0, h - 1);
    return grad.magnitude[static_cast<std::size_t>(y * w + x)];
  };

  const auto times = for_each_row(grad.height, cfg, [&](std::size_t y) {
    const auto yy = static_cast<std::ptrdiff_t>(y);
    for (std::size_t x = 0; x < grad.width; ++x) {
      const auto xx = static_cast<std::ptrdiff_t>(x);
      const std::size_t i = grad.index(x, y);
      const double m = grad.magnitude[i];
      const auto nb = suppression_neighbours(grad.orientation[i]);
      if (m >= mag_at(xx + nb[0][0], yy + nb[0][1]) && m >= mag_at(xx + nb[1][0], yy + nb[1][1])) {
        out.magnitude[i] = m;
      }
    }
  });
  if (profile) profile->accumulate(times);
  return out;
}

}  // namespace edgeforge
