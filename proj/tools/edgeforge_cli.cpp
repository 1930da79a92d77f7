// edgeforge: edge detection, scaling benchmarks and filter criteria.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "edgeforge/bench.hpp"
#include "edgeforge/criteria.hpp"
#include "edgeforge/pipeline.hpp"
#include "edgeforge/synthetic.hpp"

namespace fs = std::filesystem;
using namespace edgeforge;

namespace {

struct PipelineFlags {
  double sigma = 1.4;
  std::size_t workers = WorkerConfig::detected().workers;
  std::size_t granularity = 16;
  double low = -1.0;
  double high = -1.0;
  bool auto_threshold = false;
  double high_ratio = 0.2;
  double low_ratio = 0.4;
  std::string hysteresis = "serial";
  std::string edge_operator = "canny";

  void attach(CLI::App& cmd) {
    cmd.add_option("--sigma", sigma, "Gaussian sigma in pixels")->check(CLI::PositiveNumber);
    cmd.add_option("--workers", workers, "Worker threads")
        ->envname("EDGEFORGE_WORKERS")
        ->check(CLI::Range(std::size_t{1}, std::size_t{1024}));
    cmd.add_option("--granularity", granularity, "Minimum rows per band")->check(CLI::PositiveNumber);
    auto* lo = cmd.add_option("--low", low, "Absolute low threshold")->check(CLI::NonNegativeNumber);
    auto* hi = cmd.add_option("--high", high, "Absolute high threshold")->check(CLI::NonNegativeNumber);
    auto* au = cmd.add_flag("--auto-threshold", auto_threshold,
                            "Derive thresholds from the thinned magnitude (default)");
    au->excludes(lo)->excludes(hi);
    cmd.add_option("--high-ratio", high_ratio, "Auto high threshold as a fraction of the peak");
    cmd.add_option("--low-ratio", low_ratio, "Auto low threshold as a fraction of high");
    cmd.add_option("--hysteresis", hysteresis, "serial|parallel")
        ->check(CLI::IsMember({"serial", "parallel"}));
    cmd.add_option("--operator", edge_operator, "canny|laplacian")
        ->check(CLI::IsMember({"canny", "laplacian"}));
  }

  PipelineConfig build() const {
    PipelineConfig cfg;
    cfg.sigma = sigma;
    cfg.workers.workers = workers;
    cfg.workers.band_granularity = granularity;
    cfg.high_ratio = high_ratio;
    cfg.low_ratio = low_ratio;
    cfg.hysteresis = parse_hysteresis_mode(hysteresis);
    cfg.edge_operator = parse_edge_operator(edge_operator);
    const bool has_low = low >= 0.0;
    const bool has_high = high >= 0.0;
    if (has_low != has_high) throw std::invalid_argument("--low and --high must be given together");
    if (has_low) {
      cfg.thresholds = Thresholds{low, high};
      cfg.thresholds->validate();
    }
    return cfg;
  }
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path);
}

// Whitespace-separated numbers; '#' starts a comment that runs to end of line.
std::vector<double> read_numbers(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string tok;
    while (tokens >> tok) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) + ": not a number: " + tok);
      }
      values.push_back(v);
    }
  }
  return values;
}

// First number is the support T, the rest are samples on [-T, T].
std::pair<double, std::vector<double>> read_sample_file(const std::string& path) {
  auto values = read_numbers(path);
  if (values.size() < 4) throw std::runtime_error(path + ": expected support followed by samples");
  const double support = values.front();
  values.erase(values.begin());
  return {support, std::move(values)};
}

std::string format_sig(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

int run_detect(const std::string& in, const std::string& out, const std::string& dump_dir,
               const PipelineFlags& flags) {
  const auto cfg = flags.build();
  const auto img = read_pgm_file(in);
  const auto result = run_pipeline(img, cfg, !dump_dir.empty());
  write_pgm_file(out, edge_image(result.edges));
  if (!dump_dir.empty()) {
    fs::create_directories(dump_dir);
    for (const auto& [name, stage] : stage_images(result)) {
      write_pgm_file(fs::path(dump_dir) / (name + ".pgm"), stage);
    }
  }
  std::cerr << "edgeforge: " << result.edges.edge_count() << " edge pixels, thresholds low="
            << result.thresholds.low << " high=" << result.thresholds.high << '\n';
  return 0;
}

int run_bench(const std::string& in, const std::string& noise, std::uint64_t seed,
              const std::vector<std::size_t>& worker_counts, std::size_t repetitions,
              std::size_t max_workers, const std::string& format, const std::string& out,
              const PipelineFlags& flags) {
  const auto cfg = flags.build();
  GrayImage img(1, 1);
  nlohmann::json image_info;
  if (!in.empty()) {
    img = read_pgm_file(in);
    image_info["path"] = in;
  } else {
    std::size_t w = 0;
    std::size_t h = 0;
    char sep = 0;
    std::istringstream dims(noise);
    if (!(dims >> w >> sep >> h) || (sep != 'x' && sep != 'X') || w == 0 || h == 0) {
      throw std::invalid_argument("--noise expects WIDTHxHEIGHT, got '" + noise + "'");
    }
    img = synthetic::noise(w, h, seed);
    image_info["synthetic"] = "noise";
    image_info["seed"] = seed;
  }

  BenchOptions options;
  options.repetitions = repetitions;
  options.max_workers = max_workers;
  auto report = run_benchmark(img, worker_counts, cfg, options);
  image_info["width"] = img.width();
  image_info["height"] = img.height();
  report.image = image_info;

  write_text(out, format == "json" ? to_json(report).dump(2) + "\n" : to_csv(report));
  return 0;
}

int run_criteria(const std::string& filter_path, const std::string& density_path, double amplitude,
                 double noise_sigma) {
  const auto [support, samples] = read_sample_file(filter_path);
  const criteria::Filter1D filter(support, samples);
  std::cout << "snr " << format_sig(criteria::snr_criterion(filter, {amplitude, noise_sigma}), 10)
            << '\n';
  if (samples.size() >= 5) {
    std::cout << "minimal_response " << format_sig(criteria::minimal_response_criterion(filter), 10)
              << '\n';
  }
  if (!density_path.empty()) {
    const auto [dsupport, dsamples] = read_sample_file(density_path);
    const criteria::LocalizationDensity density(dsupport, dsamples);
    std::cout << "localization " << format_sig(criteria::localization_criterion(density), 10) << '\n';
  }
  return 0;
}

int run_speedup_model(double f, unsigned n, unsigned r, double perf_exponent, bool table) {
  const auto perf = [perf_exponent](double x) { return std::pow(x, perf_exponent); };
  if (!table) {
    criteria::SpeedupModel model{f, n, r, perf};
    std::cout << format_sig(criteria::asymmetric_speedup(model), 6) << '\n';
    return 0;
  }
  std::cout << "n,r,speedup\n";
  for (unsigned cores = 1; cores <= n; cores *= 2) {
    for (unsigned big = 1; big <= cores; big *= 2) {
      criteria::SpeedupModel model{f, cores, big, perf};
      std::cout << cores << ',' << big << ',' << format_sig(criteria::asymmetric_speedup(model), 6)
                << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"edgeforge: parallel Canny edge detection and scaling benchmarks"};
  app.require_subcommand(1);

  auto* detect = app.add_subcommand("detect", "Run the edge pipeline and write an edge PGM");
  std::string detect_in;
  std::string detect_out;
  std::string dump_dir;
  PipelineFlags detect_flags;
  detect->add_option("--in", detect_in, "Input PGM (P5 or P2)")->required();
  detect->add_option("--out", detect_out, "Output edge PGM")->required();
  detect->add_option("--dump-stages", dump_dir, "Directory for blur/magnitude/nms stage PGMs");
  detect_flags.attach(*detect);

  auto* bench = app.add_subcommand("bench", "Time each stage across worker counts");
  std::string bench_in;
  std::string bench_noise;
  std::uint64_t seed = 1;
  std::vector<std::size_t> worker_counts{1, 2, 4};
  std::size_t repetitions = 5;
  std::size_t max_workers = 64;
  std::string format = "csv";
  std::string bench_out;
  PipelineFlags bench_flags;
  auto* bin = bench->add_option("--in", bench_in, "Input PGM");
  auto* bnoise = bench->add_option("--noise", bench_noise, "Synthetic noise image WIDTHxHEIGHT");
  bin->excludes(bnoise);
  bench->add_option("--seed", seed, "Seed for --noise");
  bench->add_option("--worker-counts", worker_counts, "Worker counts to time (must include 1)")
      ->delimiter(',');
  bench->add_option("--repetitions", repetitions, "Timed repetitions per worker count (>= 3)");
  bench->add_option("--max-workers", max_workers, "Hard cap on any worker count");
  bench->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  bench->add_option("--out", bench_out, "Report path (stdout if omitted)");
  bench_flags.attach(*bench);

  auto* crit = app.add_subcommand("criteria", "Evaluate filter design criteria for a sampled filter");
  std::string filter_path;
  std::string density_path;
  double amplitude = 1.0;
  double noise_sigma = 1.0;
  crit->add_option("--filter", filter_path, "Sample file: support T, then odd count of samples")
      ->required();
  crit->add_option("--density", density_path, "Localization density sample file (same layout)");
  crit->add_option("--amplitude", amplitude, "Edge amplitude A")->check(CLI::PositiveNumber);
  crit->add_option("--noise-sigma", noise_sigma, "Noise sigma")->check(CLI::PositiveNumber);

  auto* model = app.add_subcommand("speedup-model", "Evaluate the asymmetric Amdahl speedup");
  double f = 0.9;
  unsigned n = 8;
  unsigned r = 1;
  double perf_exponent = 0.5;
  bool table = false;
  model->add_option("--f", f, "Parallel fraction in [0, 1]")->check(CLI::Range(0.0, 1.0));
  model->add_option("--n", n, "Base-core equivalents")->check(CLI::PositiveNumber);
  model->add_option("--r", r, "Resources in the sequential core")->check(CLI::PositiveNumber);
  model->add_option("--perf-exponent", perf_exponent, "perf(r) = r^exponent");
  model->add_flag("--table", table, "Print n,r,speedup for power-of-two n and r up to --n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (detect->parsed()) return run_detect(detect_in, detect_out, dump_dir, detect_flags);
    if (bench->parsed()) {
      if (bench_in.empty() && bench_noise.empty()) {
        throw std::invalid_argument("bench needs --in or --noise");
      }
      return run_bench(bench_in, bench_noise, seed, worker_counts, repetitions, max_workers, format,
                       bench_out, bench_flags);
    }
    if (crit->parsed()) return run_criteria(filter_path, density_path, amplitude, noise_sigma);
    if (model->parsed()) return run_speedup_model(f, n, r, perf_exponent, table);
  } catch (const std::exception& e) {
    std::cerr << "edgeforge: error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
