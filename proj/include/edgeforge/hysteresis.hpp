#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "edgeforge/image.hpp"
#include "edgeforge/nms.hpp"
#include "edgeforge/parallel.hpp"

namespace edgeforge {

struct Thresholds {
  double low = 0.0;
  double high = 0.0;

  /// Throws std::invalid_argument unless 0 <= low <= high (both finite).
  void validate() const;
};

enum class EdgeLabel : std::uint8_t { None = 0, Weak = 1, Strong = 2 };

/// Threshold labels plus the traced binary result. `final` is empty until
/// one of the trace functions fills it (one byte per pixel, 0 or 1).
struct EdgeMap {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<EdgeLabel> labels;
  std::vector<std::uint8_t> final;

  std::size_t index(std::size_t x, std::size_t y) const noexcept { return y * width + x; }
  std::size_t edge_count() const;
};

/// Strong if m >= high, Weak if low <= m < high, None otherwise.
EdgeMap double_threshold(const ThinnedField& thin, const Thresholds& t);

/// high = high_ratio * max(thinned magnitude), low = low_ratio * high.
/// An all-zero field gives {0, 0}.
Thresholds auto_thresholds(const ThinnedField& thin, const WorkerConfig& cfg,
                           double high_ratio = 0.2, double low_ratio = 0.4);

/// Serial breadth-first flood from every Strong pixel through 8-connected
/// Weak/Strong pixels.
EdgeMap trace_edges(const EdgeMap& map);

/// Same result as trace_edges. Each row band labels its own 8-connected
/// components in parallel; a serial pass then unions components that touch
/// across band boundaries, and a final parallel pass marks every pixel whose
/// merged component contains a Strong pixel.
EdgeMap trace_edges_parallel(const EdgeMap& map, const WorkerConfig& cfg,
                             BandProfile* profile = nullptr);

/// 255 where final is set, 0 elsewhere.
GrayImage edge_image(const EdgeMap& map);

}  // namespace edgeforge
