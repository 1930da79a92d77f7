#include "edgeforge/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

namespace edgeforge::criteria {

namespace {

void check_support(double support) {
  if (!std::isfinite(support) || support <= 0.0) {
    throw std::invalid_argument("support must be positive and finite");
  }
}

void check_grid(std::span<const double> samples) {
  if (samples.size() < 3 || samples.size() % 2 == 0) {
    throw std::invalid_argument("sample count must be odd and at least 3, got " +
                                std::to_string(samples.size()));
  }
  if (!std::ranges::all_of(samples, [](double v) { return std::isfinite(v); })) {
    throw std::invalid_argument("samples must be finite");
  }
}

std::vector<double> sample_grid(double support, std::size_t count,
                                const std::function<double(double)>& fn) {
  if (count < 2) throw std::invalid_argument("need at least two samples");
  std::vector<double> out(count);
  const double h = 2.0 * support / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = fn(-support + static_cast<double>(i) * h);
  return out;
}

// Second-order accurate first derivative on a uniform grid.
std::vector<double> first_derivative(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  std::vector<double> d(n);
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
  return d;
}

// Second-order accurate second derivative on a uniform grid.
std::vector<double> second_derivative(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  const double h2 = h * h;
  std::vector<double> d(n);
  d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
  d[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2;
  return d;
}

double integral_of_square(std::span<const double> f, double h) {
  std::vector<double> sq(f.size());
  std::ranges::transform(f, sq.begin(), [](double v) { return v * v; });
  return trapezoid(sq, h);
}

}  // namespace

Filter1D::Filter1D(double support, std::vector<double> samples)
    : support_(support), samples_(std::move(samples)) {
  check_support(support_);
  check_grid(samples_);
}

Filter1D Filter1D::sampled(double support, std::size_t count, const std::function<double(double)>& fn) {
  check_support(support);
  return Filter1D(support, sample_grid(support, count, fn));
}

LocalizationDensity::LocalizationDensity(double support, std::vector<double> samples)
    : support_(support), samples_(std::move(samples)) {
  check_support(support_);
  check_grid(samples_);
  if (std::ranges::any_of(samples_, [](double v) { return v < 0.0; })) {
    throw std::invalid_argument("density samples must be non-negative");
  }
  const double mass = trapezoid(samples_, spacing());
  if (std::abs(mass - 1.0) > 1e-6) {
    throw std::invalid_argument("density integrates to " + std::to_string(mass) + ", expected 1");
  }
}

LocalizationDensity LocalizationDensity::sampled(double support, std::size_t count,
                                                 const std::function<double(double)>& density) {
  check_support(support);
  return LocalizationDensity(support, sample_grid(support, count, density));
}

double SpeedupModel::default_perf(double r) { return std::sqrt(r); }

void SpeedupModel::validate() const {
  if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("parallel fraction f must lie in [0, 1]");
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (r < 1 || r > n) throw std::invalid_argument("r must satisfy 1 <= r <= n");
  if (!perf) throw std::invalid_argument("perf mapping is empty");
}

double trapezoid(std::span<const double> values, double h) {
  if (values.size() < 2) return 0.0;
  double interior = 0.0;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) interior += values[i];
  return h * (0.5 * (values.front() + values.back()) + interior);
}

double snr_criterion(const Filter1D& filter, const EdgeModel& model) {
  if (!(model.amplitude > 0.0) || !(model.noise_sigma > 0.0) || !std::isfinite(model.amplitude) ||
      !std::isfinite(model.noise_sigma)) {
    throw std::invalid_argument("edge amplitude and noise sigma must be positive and finite");
  }
  const auto f = filter.samples();
  const double h = filter.spacing();
  const double half = trapezoid(f.first(f.size() / 2 + 1), h);
  const double energy = integral_of_square(f, h);
  if (energy == 0.0) throw std::domain_error("filter is identically zero");
  return model.amplitude * std::abs(half) / (model.noise_sigma * std::sqrt(energy));
}

double localization_criterion(const LocalizationDensity& density) {
  const auto p = density.samples();
  std::vector<double> moment(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double y = density.y(i);
    moment[i] = y * y * p[i];
  }
  const double variance = trapezoid(moment, density.spacing());
  if (variance == 0.0) throw std::domain_error("density has zero second moment");
  return 1.0 / std::sqrt(variance);
}

double minimal_response_criterion(const Filter1D& filter) {
  const auto f = filter.samples();
  if (f.size() < 5) throw std::invalid_argument("minimal response needs at least 5 samples");
  const double h = filter.spacing();
  const double slope = integral_of_square(first_derivative(f, h), h);
  const auto f2 = second_derivative(f, h);
  // Second differences of an affine filter are pure rounding noise.
  double scale = 0.0;
  double bend = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    scale = std::max(scale, std::abs(f[i]));
    bend = std::max(bend, std::abs(f2[i]) * h * h);
  }
  if (bend <= 16.0 * std::numeric_limits<double>::epsilon() * scale) {
    throw std::domain_error("filter has zero curvature (affine)");
  }
  const double curvature = integral_of_square(f2, h);
  return 2.0 * std::numbers::pi * std::sqrt(slope / curvature);
}

double asymmetric_speedup(const SpeedupModel& model) {
  model.validate();
  const double p = model.perf(static_cast<double>(model.r));
  const double q = p + static_cast<double>(model.n) - static_cast<double>(model.r);
  // 1 / ((1-f)/p + f/q) over a common denominator; exact at f = 1, r = 1.
  return p * q / ((1.0 - model.f) * q + model.f * p);
}

double fit_parallel_fraction(std::span<const TimingSample> timings) {
  std::map<std::size_t, std::pair<double, std::size_t>> by_workers;
  for (const auto& t : timings) {
    if (t.workers == 0) throw std::invalid_argument("worker count must be at least 1");
    if (!(t.seconds > 0.0) || !std::isfinite(t.seconds)) {
      throw std::invalid_argument("timings must be positive and finite");
    }
    auto& [sum, count] = by_workers[t.workers];
    sum += t.seconds;
    ++count;
  }
  if (by_workers.size() < 2) throw std::invalid_argument("need at least two distinct worker counts");
  if (!by_workers.contains(1)) throw std::invalid_argument("timings must include workers = 1");

  const double base = by_workers[1].first / static_cast<double>(by_workers[1].second);
  std::vector<std::pair<double, double>> points;  // (w, measured speedup)
  for (const auto& [w, acc] : by_workers) {
    points.emplace_back(static_cast<double>(w), base / (acc.first / static_cast<double>(acc.second)));
  }

  const auto residual = [&](double f) {
    double sse = 0.0;
    for (const auto& [w, s] : points) {
      const double e = s - 1.0 / ((1.0 - f) + f / w);
      sse += e * e;
    }
    return sse;
  };

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0;
  double b = 1.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = residual(c);
  double fd = residual(d);
  while (b - a > 1e-9) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = residual(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = residual(d);
    }
  }
  double best = 0.5 * (a + b);
  for (double edge : {0.0, 1.0}) {
    if (residual(edge) < residual(best)) best = edge;
  }
  return best;
}

}  // namespace edgeforge::criteria
