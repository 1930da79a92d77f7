#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "edgeforge/image.hpp"
#include "edgeforge/pipeline.hpp"

namespace edgeforge {

struct BenchOptions {
  std::size_t repetitions = 5;
  std::size_t max_workers = 64;
  bool warmup = true;
};

struct BenchRecord {
  std::string stage;
  std::size_t workers = 0;
  std::size_t repetition = 0;
  std::int64_t wall_ns = 0;
  double evenness = 1.0;
};

struct StageSpeedup {
  std::string stage;
  std::size_t workers = 0;
  double median_ns = 0.0;
  double speedup = 1.0;  // median at workers=1 divided by median here
  double evenness = 1.0;  // median over repetitions
};

struct AsymmetricPrediction {
  unsigned n = 1;
  unsigned r = 1;
  double speedup = 1.0;
};

/// Whole-pipeline stage name used for the parallel-fraction fit.
inline constexpr const char* kPipelineStage = "pipeline";

struct BenchReport {
  nlohmann::json image;
  nlohmann::json config;
  std::vector<BenchRecord> records;
  std::vector<StageSpeedup> speedups;
  double fitted_parallel_fraction = 0.0;
  std::vector<AsymmetricPrediction> asymmetric_predictions;

  /// nullptr when the (stage, workers) cell was not measured.
  const StageSpeedup* find(std::string_view stage, std::size_t workers) const;
};

/// One repetition at the given worker count. Must report a kPipelineStage
/// record alongside any per-stage records.
using StageRunner = std::function<std::vector<StageRecord>(std::size_t workers)>;

/// Drives `runner` over every worker count and repetition (plus one discarded
/// warm-up per worker count), then derives medians, speedups, the fitted
/// parallel fraction and sqrt(r) asymmetric predictions.
BenchReport run_benchmark_with(const StageRunner& runner, std::span<const std::size_t> worker_counts,
                               const BenchOptions& options);

/// Benchmarks run_pipeline on `img`; cfg.workers.workers is overridden per run.
BenchReport run_benchmark(const GrayImage& img, std::span<const std::size_t> worker_counts,
                          const PipelineConfig& cfg, const BenchOptions& options = {});

/// Header `stage,workers,repetition,wall_ns`, one row per record, then the
/// derived sections, each introduced by a `#` comment line.
std::string to_csv(const BenchReport& report);

nlohmann::json to_json(const BenchReport& report);

}  // namespace edgeforge
