#include "edgeforge/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace edgeforge {

WorkerConfig WorkerConfig::detected() {
  WorkerConfig cfg;
  cfg.workers = std::max(1u, std::thread::hardware_concurrency());
  return cfg;
}

void WorkerConfig::validate() const {
  if (workers == 0) throw std::invalid_argument("worker count must be at least 1");
  if (band_granularity == 0) throw std::invalid_argument("band granularity must be at least 1");
}

std::vector<Band> plan_bands(std::size_t height, const WorkerConfig& cfg) {
  cfg.validate();
  if (height == 0) return {};

  const std::size_t g = cfg.band_granularity;
  const std::size_t chunks = (height + g - 1) / g;
  const std::size_t count = std::min(cfg.workers, chunks);

  std::vector<Band> bands;
  bands.reserve(count);
  if (height / count >= g) {
    const std::size_t base = height / count;
    const std::size_t extra = height % count;
    std::size_t start = 0;
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t len = base + (i < extra ? 1 : 0);
      bands.push_back({start, start + len});
      start += len;
    }
  } else {
    // Only reachable when count == chunks: fixed-size bands plus a remainder.
    for (std::size_t start = 0; start < height; start += g) {
      bands.push_back({start, std::min(height, start + g)});
    }
  }
  return bands;
}

void BandProfile::accumulate(const BandTimes& times) {
  if (band_times.size() < times.size()) band_times.resize(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) band_times[i] += times[i];
}

double BandProfile::evenness() const {
  if (band_times.size() < 2) return 1.0;
  const auto [lo, hi] = std::ranges::minmax(band_times);
  if (hi.count() == 0) return 1.0;
  if (lo.count() == 0) return static_cast<double>(hi.count());
  return static_cast<double>(hi.count()) / static_cast<double>(lo.count());
}

namespace {

class FirstError {
 public:
  void capture() {
    std::lock_guard lock(mutex_);
    if (!error_) error_ = std::current_exception();
    failed_.store(true, std::memory_order_release);
  }
  bool failed() const { return failed_.load(std::memory_order_acquire); }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mutex_;
  std::exception_ptr error_;
  std::atomic<bool> failed_{false};
};

BandTimes run_bands(std::size_t height, const WorkerConfig& cfg,
                    const std::function<void(std::size_t, Band, const FirstError&)>& fn) {
  const auto bands = plan_bands(height, cfg);
  BandTimes times(bands.size());
  FirstError error;

  const auto executor = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < bands.size(); i += stride) {
      if (error.failed()) return;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        fn(i, bands[i], error);
      } catch (...) {
        error.capture();
        return;
      }
      times[i] = std::chrono::steady_clock::now() - t0;
    }
  };

  const std::size_t executors = std::min(cfg.workers, bands.size());
  if (executors <= 1) {
    executor(0, 1);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(executors - 1);
    for (std::size_t e = 1; e < executors; ++e) threads.emplace_back(executor, e, executors);
    executor(0, executors);
  }  // jthreads join here
  error.rethrow();
  return times;
}

}  // namespace

BandTimes for_each_band(std::size_t height, const WorkerConfig& cfg,
                        const std::function<void(std::size_t, Band)>& band_fn) {
  return run_bands(height, cfg,
                   [&](std::size_t i, Band band, const FirstError&) { band_fn(i, band); });
}

BandTimes for_each_row(std::size_t height, const WorkerConfig& cfg,
                       const std::function<void(std::size_t)>& row_fn) {
  return run_bands(height, cfg, [&](std::size_t, Band band, const FirstError& error) {
    for (std::size_t row = band.begin; row < band.end; ++row) {
      if (error.failed()) return;
      row_fn(row);
    }
  });
}

}  // namespace edgeforge
