#include "edgeforge/bench.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>
#include <stdexcept>

#include "edgeforge/criteria.hpp"

namespace edgeforge {

namespace {

double median(std::vector<double> v) {
  std::ranges::sort(v);
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<std::size_t> checked_worker_counts(std::span<const std::size_t> worker_counts,
                                               const BenchOptions& options) {
  if (options.repetitions < 3) throw std::invalid_argument("benchmark needs at least 3 repetitions");
  std::vector<std::size_t> counts;
  for (std::size_t w : worker_counts) {
    if (w == 0) throw std::invalid_argument("worker count must be at least 1");
    if (w > options.max_workers) {
      throw std::invalid_argument("worker count " + std::to_string(w) + " exceeds the cap of " +
                                  std::to_string(options.max_workers));
    }
    if (std::ranges::find(counts, w) == counts.end()) counts.push_back(w);
  }
  if (std::ranges::find(counts, std::size_t{1}) == counts.end()) {
    throw std::invalid_argument("worker counts must include 1");
  }
  std::ranges::sort(counts);
  return counts;
}

}  // namespace

const StageSpeedup* BenchReport::find(std::string_view stage, std::size_t workers) const {
  const auto it = std::ranges::find_if(
      speedups, [&](const StageSpeedup& s) { return s.stage == stage && s.workers == workers; });
  return it == speedups.end() ? nullptr : &*it;
}

BenchReport run_benchmark_with(const StageRunner& runner, std::span<const std::size_t> worker_counts,
                               const BenchOptions& options) {
  const auto counts = checked_worker_counts(worker_counts, options);

  BenchReport report;
  std::vector<std::string> stage_order;
  for (std::size_t w : counts) {
    if (options.warmup) (void)runner(w);
    for (std::size_t rep = 0; rep < options.repetitions; ++rep) {
      for (const auto& s : runner(w)) {
        if (std::ranges::find(stage_order, s.timing.stage_name) == stage_order.end()) {
          stage_order.push_back(s.timing.stage_name);
        }
        report.records.push_back(
            {s.timing.stage_name, w, rep, static_cast<std::int64_t>(s.timing.wall_time.count()), s.evenness});
      }
    }
  }

  std::map<std::pair<std::string, std::size_t>, std::pair<std::vector<double>, std::vector<double>>> cells;
  for (const auto& r : report.records) {
    auto& [times, even] = cells[{r.stage, r.workers}];
    times.push_back(static_cast<double>(r.wall_ns));
    even.push_back(r.evenness);
  }

  for (const auto& stage : stage_order) {
    const auto base_it = cells.find({stage, 1});
    const double base = base_it == cells.end() ? 0.0 : median(base_it->second.first);
    for (std::size_t w : counts) {
      const auto it = cells.find({stage, w});
      if (it == cells.end()) continue;
      StageSpeedup s;
      s.stage = stage;
      s.workers = w;
      s.median_ns = median(it->second.first);
      s.evenness = median(it->second.second);
      if (w == 1) {
        s.speedup = 1.0;
      } else {
        s.speedup = s.median_ns > 0.0 ? base / s.median_ns : 0.0;
      }
      report.speedups.push_back(s);
    }
  }

  std::vector<criteria::TimingSample> samples;
  for (std::size_t w : counts) {
    if (const auto* s = report.find(kPipelineStage, w)) {
      samples.push_back({w, std::max(s->median_ns, 1.0) * 1e-9});
    }
  }
  if (samples.size() >= 2) {
    report.fitted_parallel_fraction = criteria::fit_parallel_fraction(samples);
  } else if (samples.size() == 1) {
    report.fitted_parallel_fraction = 0.0;
  } else {
    throw std::runtime_error("stage runner reported no '" + std::string(kPipelineStage) + "' stage");
  }

  for (std::size_t w : counts) {
    for (unsigned r = 1; r <= w; r *= 2) {
      criteria::SpeedupModel model;
      model.f = report.fitted_parallel_fraction;
      model.n = static_cast<unsigned>(w);
      model.r = r;
      report.asymmetric_predictions.push_back({model.n, r, criteria::asymmetric_speedup(model)});
    }
  }

  report.config = {{"worker_counts", counts},
                   {"repetitions", options.repetitions},
                   {"warmup", options.warmup}};
  return report;
}

BenchReport run_benchmark(const GrayImage& img, std::span<const std::size_t> worker_counts,
                          const PipelineConfig& cfg, const BenchOptions& options) {
  const StageRunner runner = [&](std::size_t workers) {
    PipelineConfig run_cfg = cfg;
    run_cfg.workers.workers = workers;
    const auto t0 = std::chrono::steady_clock::now();
    auto result = run_pipeline(img, run_cfg);
    const auto total = std::chrono::duration_cast<std::chrono::nanoseconds>(
        std::chrono::steady_clock::now() - t0);
    auto stages = std::move(result.stages);
    stages.push_back({{kPipelineStage, workers, total, img.height()}, 1.0});
    return stages;
  };

  auto report = run_benchmark_with(runner, worker_counts, options);
  report.image = {{"width", img.width()}, {"height", img.height()}};
  report.config["sigma"] = cfg.sigma;
  report.config["band_granularity"] = cfg.workers.band_granularity;
  report.config["hysteresis"] = std::string(to_string(cfg.hysteresis));
  report.config["operator"] = std::string(to_string(cfg.edge_operator));
  if (cfg.thresholds) {
    report.config["thresholds"] = {{"low", cfg.thresholds->low}, {"high", cfg.thresholds->high}};
  } else {
    report.config["thresholds"] = {{"auto", true},
                                   {"high_ratio", cfg.high_ratio},
                                   {"low_ratio", cfg.low_ratio}};
  }
  return report;
}

std::string to_csv(const BenchReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << "stage,workers,repetition,wall_ns\n";
  for (const auto& r : report.records) {
    out << r.stage << ',' << r.workers << ',' << r.repetition << ',' << r.wall_ns << '\n';
  }
  out << "# speedups\n";
  out << "stage,workers,median_wall_ns,speedup,evenness\n";
  for (const auto& s : report.speedups) {
    out << s.stage << ',' << s.workers << ',' << s.median_ns << ',' << s.speedup << ',' << s.evenness
        << '\n';
  }
  out << "# fitted_parallel_fraction\n";
  out << "fitted_parallel_fraction," << report.fitted_parallel_fraction << '\n';
  out << "# asymmetric_predictions\n";
  out << "n,r,speedup\n";
  for (const auto& p : report.asymmetric_predictions) {
    out << p.n << ',' << p.r << ',' << p.speedup << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const BenchReport& report) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : report.records) {
    records.push_back({{"stage", r.stage},
                       {"workers", r.workers},
                       {"repetition", r.repetition},
                       {"wall_ns", r.wall_ns},
                       {"evenness", r.evenness}});
  }
  nlohmann::json speedups = nlohmann::json::array();
  for (const auto& s : report.speedups) {
    speedups.push_back({{"stage", s.stage},
                        {"workers", s.workers},
                        {"median_wall_ns", s.median_ns},
                        {"speedup", s.speedup},
                        {"evenness", s.evenness}});
  }
  nlohmann::json predictions = nlohmann::json::array();
  for (const auto& p : report.asymmetric_predictions) {
    predictions.push_back({{"n", p.n}, {"r", p.r}, {"speedup", p.speedup}});
  }
  return {{"image", report.image.is_null() ? nlohmann::json::object() : report.image},
          {"config", report.config},
          {"records", records},
          {"speedups", speedups},
          {"fitted_parallel_fraction", report.fitted_parallel_fraction},
          {"asymmetric_predictions", predictions}};
}

}  // namespace edgeforge
