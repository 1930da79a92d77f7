#pragma once

// Row-band parallel skeletons.
//
// Work is split into contiguous row bands (plan_bands) and each band is run by
// one executor. Every row writes only its own output slot, so results are
// bit-identical to a sequential run regardless of the worker count.

#include <chrono>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace edgeforge {

struct WorkerConfig {
  std::size_t workers = 1;
  std::size_t band_granularity = 16;

  /// Logical CPU count (at least 1) and the default granularity.
  static WorkerConfig detected();

  /// Throws std::invalid_argument unless workers >= 1 and band_granularity >= 1.
  void validate() const;
};

/// Half-open row range [begin, end).
struct Band {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  friend bool operator==(const Band&, const Band&) = default;
};

/// Partitions [0, height) into at most cfg.workers contiguous bands of
/// near-equal size, larger bands first. When an even split would leave bands
/// below the granularity, bands of exactly band_granularity rows are emitted
/// with a single smaller remainder band at the end.
std::vector<Band> plan_bands(std::size_t height, const WorkerConfig& cfg);

/// Busy time of each band, indexed like plan_bands().
using BandTimes = std::vector<std::chrono::nanoseconds>;

/// Accumulates band busy times across the passes of one stage.
struct BandProfile {
  BandTimes band_times;

  void accumulate(const BandTimes& times);
  /// max/min band time; 1.0 for fewer than two bands or an all-zero profile.
  double evenness() const;
};

struct StageTiming {
  std::string stage_name;
  std::size_t workers = 0;
  std::chrono::nanoseconds wall_time{0};
  std::size_t rows_processed = 0;
};

/// Runs band_fn(band_index, band) for every band of plan_bands(height, cfg)
/// on up to cfg.workers threads (the caller's thread included). If any call
/// throws, remaining bands are skipped and the first exception is rethrown
/// once every executor has stopped.
BandTimes for_each_band(std::size_t height, const WorkerConfig& cfg,
                        const std::function<void(std::size_t, Band)>& band_fn);

/// Runs row_fn(row) for every row exactly once. Rows inside a band run in
/// ascending order; a failure stops other bands at their next row boundary.
BandTimes for_each_row(std::size_t height, const WorkerConfig& cfg,
                       const std::function<void(std::size_t)>& row_fn);

/// Collects row_fn(row) for rows 0..height-1 in row order.
template <typename Result, typename RowFn>
std::vector<Result> parallel_row_map(std::size_t height, const WorkerConfig& cfg, RowFn&& row_fn) {
  std::vector<Result> out(height);
  for_each_row(height, cfg, [&](std::size_t row) { out[row] = row_fn(row); });
  return out;
}

/// Reduces each band independently, then folds the partials in band order so
/// the result does not depend on thread timing.
template <typename T, typename BandFn, typename Combine>
T parallel_band_reduce(std::size_t height, const WorkerConfig& cfg, T init, BandFn&& band_fn,
                       Combine&& combine) {
  const auto bands = plan_bands(height, cfg);
  std::vector<T> partial(bands.size(), init);
  for_each_band(height, cfg, [&](std::size_t i, Band band) { partial[i] = band_fn(band); });
  T acc = init;
  for (const auto& p : partial) acc = combine(acc, p);
  return acc;
}

}  // namespace edgeforge
