#include "edgeforge/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace edgeforge {

namespace {

using Clock = std::chrono::steady_clock;

// Times fn() and appends a record for it.
template <typename Fn>
auto timed(std::vector<StageRecord>& stages, std::string name, const PipelineConfig& cfg,
           std::size_t rows, Fn&& fn) {
  BandProfile profile;
  const auto t0 = Clock::now();
  auto result = fn(&profile);
  const auto elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0);
  stages.push_back({{std::move(name), cfg.workers.workers, elapsed, rows}, profile.evenness()});
  return result;
}

GrayImage rescale_for_display(std::size_t width, std::size_t height, std::span<const double> values) {
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  std::vector<double> px(values.size(), 0.0);
  if (peak > 0.0) {
    for (std::size_t i = 0; i < values.size(); ++i) px[i] = 255.0 * std::abs(values[i]) / peak;
  }
  return GrayImage(width, height, std::move(px));
}

}  // namespace

std::string_view to_string(HysteresisMode m) {
  return m == HysteresisMode::Serial ? "serial" : "parallel";
}

std::string_view to_string(EdgeOperator op) {
  return op == EdgeOperator::Canny ? "canny" : "laplacian";
}

HysteresisMode parse_hysteresis_mode(std::string_view s) {
  if (s == "serial") return HysteresisMode::Serial;
  if (s == "parallel") return HysteresisMode::Parallel;
  throw std::invalid_argument("unknown hysteresis mode '" + std::string(s) + "'");
}

EdgeOperator parse_edge_operator(std::string_view s) {
  if (s == "canny") return EdgeOperator::Canny;
  if (s == "laplacian") return EdgeOperator::Laplacian;
  throw std::invalid_argument("unknown operator '" + std::string(s) + "'");
}

EdgeMap zero_crossings(const GrayImage& response, double threshold, const WorkerConfig& cfg,
                       BandProfile* profile) {
  const std::size_t w = response.width();
  const std::size_t h = response.height();
  EdgeMap map;
  map.width = w;
  map.height = h;
  map.labels.assign(w * h, EdgeLabel::None);
  map.final.assign(w * h, 0);

  const auto crosses = [&](double a, double b) {
    return ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)) && std::abs(a - b) >= threshold;
  };
  const auto times = for_each_row(h, cfg, [&](std::size_t y) {
    for (std::size_t x = 0; x < w; ++x) {
      const double v = response.at(x, y);
      const bool edge = (x + 1 < w && crosses(v, response.at(x + 1, y))) ||
                        (y + 1 < h && crosses(v, response.at(x, y + 1)));
      if (edge) {
        map.labels[map.index(x, y)] = EdgeLabel::Strong;
        map.final[map.index(x, y)] = 1;
      }
    }
  });
  if (profile) profile->accumulate(times);
  return map;
}

PipelineResult run_pipeline(const GrayImage& img, const PipelineConfig& cfg, bool keep_intermediates) {
  cfg.workers.validate();
  if (cfg.thresholds) cfg.thresholds->validate();
  const WorkerConfig& wc = cfg.workers;
  const std::size_t rows = img.height();
  const auto kernel = build_gaussian_kernel(cfg.sigma);

  PipelineResult result;
  auto blurred = timed(result.stages, "gaussian", cfg, rows,
                       [&](BandProfile* p) { return gaussian_blur(img, kernel, wc, p); });

  if (cfg.edge_operator == EdgeOperator::Laplacian) {
    auto response = timed(result.stages, "laplacian", cfg, rows,
                          [&](BandProfile* p) { return laplacian(blurred, wc, p); });
    double threshold = 0.0;
    if (cfg.thresholds) {
      threshold = cfg.thresholds->high;
    } else {
      double peak = 0.0;
      for (double v : response.pixels()) peak = std::max(peak, std::abs(v));
      threshold = cfg.high_ratio * peak;
    }
    result.thresholds = {threshold, threshold};
    result.edges = timed(result.stages, "zero_crossing", cfg, rows,
                         [&](BandProfile* p) { return zero_crossings(response, threshold, wc, p); });
    if (keep_intermediates) {
      result.blurred = std::move(blurred);
      result.laplacian_response = std::move(response);
    }
    return result;
  }

  auto gradient = timed(result.stages, "sobel", cfg, rows,
                        [&](BandProfile* p) { return sobel(blurred, wc, p); });
  auto thinned = timed(result.stages, "nms", cfg, rows,
                       [&](BandProfile* p) { return non_max_suppress(gradient, wc, p); });
  auto labels = timed(result.stages, "threshold", cfg, rows, [&](BandProfile*) {
    result.thresholds =
        cfg.thresholds ? *cfg.thresholds : auto_thresholds(thinned, wc, cfg.high_ratio, cfg.low_ratio);
    auto map = double_threshold(thinned, result.thresholds);
    // A flat field has no peak to scale from: auto mode reports no edges.
    if (!cfg.thresholds && result.thresholds.high == 0.0) {
      std::ranges::fill(map.labels, EdgeLabel::None);
    }
    return map;
  });
  result.edges = timed(result.stages, "hysteresis", cfg, rows, [&](BandProfile* p) {
    return cfg.hysteresis == HysteresisMode::Serial ? trace_edges(labels)
                                                    : trace_edges_parallel(labels, wc, p);
  });

  if (keep_intermediates) {
    result.blurred = std::move(blurred);
    result.gradient = std::move(gradient);
    result.thinned = std::move(thinned);
  }
  return result;
}

std::vector<std::uint8_t> detect_to_pgm(const GrayImage& img, const PipelineConfig& cfg) {
  return save_pgm(edge_image(run_pipeline(img, cfg).edges));
}

std::vector<std::pair<std::string, GrayImage>> stage_images(const PipelineResult& result) {
  std::vector<std::pair<std::string, GrayImage>> out;
  if (result.blurred) out.emplace_back("blur", *result.blurred);
  if (result.gradient) {
    const auto& g = *result.gradient;
    out.emplace_back("magnitude", rescale_for_display(g.width, g.height, g.magnitude));
  }
  if (result.thinned) {
    const auto& t = *result.thinned;
    out.emplace_back("nms", rescale_for_display(t.width, t.height, t.magnitude));
  }
  if (result.laplacian_response) {
    const auto& l = *result.laplacian_response;
    out.emplace_back("laplacian", rescale_for_display(l.width(), l.height(), l.pixels()));
  }
  return out;
}

}  // namespace edgeforge
