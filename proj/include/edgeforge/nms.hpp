#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "edgeforge/gradient.hpp"
#include "edgeforge/parallel.hpp"

namespace edgeforge {

/// Gradient magnitude after suppression: each entry is either 0 or the
/// unsuppressed magnitude at that pixel.
struct ThinnedField {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> magnitude;
};

/// Pixel offsets (dx, dy) of the two neighbours compared for a direction.
///
/// Offsets follow the gradient vector in image coordinates (y grows
/// downward, matching the sign of the Sobel Ky mask), so Deg45 compares
/// (+1,+1) and (-1,-1) and Deg135 compares (-1,+1) and (+1,-1).
std::array<std::array<int, 2>, 2> suppression_neighbours(Orientation o) noexcept;

/// A pixel survives iff its magnitude is >= both neighbours along its
/// quantized direction (replicate borders). Ties survive.
ThinnedField non_max_suppress(const GradientField& grad, const WorkerConfig& cfg,
                              BandProfile* profile = nullptr);

}  // namespace edgeforge
