#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "edgeforge/filtering.hpp"
#include "edgeforge/gradient.hpp"
#include "edgeforge/hysteresis.hpp"
#include "edgeforge/image.hpp"
#include "edgeforge/nms.hpp"
#include "edgeforge/parallel.hpp"

namespace edgeforge {

enum class HysteresisMode { Serial, Parallel };
enum class EdgeOperator { Canny, Laplacian };

std::string_view to_string(HysteresisMode m);
std::string_view to_string(EdgeOperator op);
HysteresisMode parse_hysteresis_mode(std::string_view s);
EdgeOperator parse_edge_operator(std::string_view s);

struct PipelineConfig {
  double sigma = 1.4;
  /// Absolute thresholds; when empty they are derived from the thinned field
  /// as high = high_ratio * max, low = low_ratio * high.
  std::optional<Thresholds> thresholds;
  double high_ratio = 0.2;
  double low_ratio = 0.4;
  WorkerConfig workers;
  HysteresisMode hysteresis = HysteresisMode::Serial;
  EdgeOperator edge_operator = EdgeOperator::Canny;
};

struct StageRecord {
  StageTiming timing;
  /// max/min band time within the stage; 1.0 for serial stages.
  double evenness = 1.0;
};

struct PipelineResult {
  EdgeMap edges;
  Thresholds thresholds;
  std::vector<StageRecord> stages;

  // Filled only when run_pipeline is asked to keep intermediates.
  std::optional<GrayImage> blurred;
  std::optional<GradientField> gradient;
  std::optional<ThinnedField> thinned;
  std::optional<GrayImage> laplacian_response;
};

/// Canny: blur, sobel, nms, double threshold, trace (serial or banded).
/// Laplacian: blur, 5-point laplacian, zero crossings whose jump is at least
/// the high threshold (absolute, or high_ratio * max |response|).
PipelineResult run_pipeline(const GrayImage& img, const PipelineConfig& cfg,
                            bool keep_intermediates = false);

/// Encoded P5 bytes of the final edge map (255 = edge).
std::vector<std::uint8_t> detect_to_pgm(const GrayImage& img, const PipelineConfig& cfg);

/// Viewable intermediates keyed by stage name. Magnitude-like fields are
/// linearly rescaled to [0, 255]; the rescaling is for display only.
std::vector<std::pair<std::string, GrayImage>> stage_images(const PipelineResult& result);

/// Zero-crossing detector on a Laplacian response: a pixel is marked when its
/// right or lower neighbour has the opposite sign and the jump between them
/// is >= threshold.
EdgeMap zero_crossings(const GrayImage& response, double threshold, const WorkerConfig& cfg,
                       BandProfile* profile = nullptr);

}  // namespace edgeforge
