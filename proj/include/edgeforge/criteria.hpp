#pragma once

// Numeric evaluators for Canny's filter-design criteria and for the
// asymmetric-multicore form of Amdahl's law.
//
// Every integral uses the composite trapezoid rule on the sample grid.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace edgeforge::criteria {

/// Filter impulse response sampled uniformly on [-support, support]. An odd
/// sample count >= 3 puts samples at x = 0 and x = +/-support.
class Filter1D {
 public:
  Filter1D(double support, std::vector<double> samples);

  /// Samples fn at `count` evenly spaced points on [-support, support].
  static Filter1D sampled(double support, std::size_t count, const std::function<double(double)>& fn);

  double support() const noexcept { return support_; }
  double spacing() const noexcept { return 2.0 * support_ / static_cast<double>(samples_.size() - 1); }
  double x(std::size_t i) const noexcept { return -support_ + static_cast<double>(i) * spacing(); }
  std::span<const double> samples() const noexcept { return samples_; }

 private:
  double support_;
  std::vector<double> samples_;
};

/// Step amplitude A and noise standard deviation sigma.
struct EdgeModel {
  double amplitude = 1.0;
  double noise_sigma = 1.0;
};

/// Probability density sampled uniformly on [-support, support]; must be
/// non-negative and integrate to 1 within 1e-6.
class LocalizationDensity {
 public:
  LocalizationDensity(double support, std::vector<double> samples);

  static LocalizationDensity sampled(double support, std::size_t count,
                                     const std::function<double(double)>& density);

  double support() const noexcept { return support_; }
  double spacing() const noexcept { return 2.0 * support_ / static_cast<double>(samples_.size() - 1); }
  double y(std::size_t i) const noexcept { return -support_ + static_cast<double>(i) * spacing(); }
  std::span<const double> samples() const noexcept { return samples_; }

 private:
  double support_;
  std::vector<double> samples_;
};

/// Parallel fraction f, n base-core equivalents, r of them fused into the
/// sequential core, and perf(r) its relative performance (default sqrt(r)).
struct SpeedupModel {
  double f = 0.0;
  unsigned n = 1;
  unsigned r = 1;
  std::function<double(double)> perf = default_perf;

  static double default_perf(double r);
  void validate() const;
};

struct TimingSample {
  std::size_t workers = 1;
  double seconds = 0.0;
};

/// Composite trapezoid rule with uniform spacing h.
double trapezoid(std::span<const double> values, double h);

/// A |integral of f over [-T, 0]| / (sigma sqrt(integral of f^2 over [-T, T]))
double snr_criterion(const Filter1D& filter, const EdgeModel& model);

/// 1 / sqrt(integral of y^2 Pr(y) over [-T, T])
double localization_criterion(const LocalizationDensity& density);

/// 2 pi sqrt(integral of f'^2 / integral of f''^2). Derivatives are central
/// differences, second-order one-sided at the ends. Needs >= 5 samples.
double minimal_response_criterion(const Filter1D& filter);

/// 1 / ((1 - f) / perf(r) + f / (perf(r) + n - r))
double asymmetric_speedup(const SpeedupModel& model);

/// Least-squares fit of measured speedup T(1)/T(w) to the symmetric Amdahl
/// curve 1 / ((1 - f) + f / w), f in [0, 1], by golden-section search.
/// Repeated worker counts are averaged.
double fit_parallel_fraction(std::span<const TimingSample> timings);

}  // namespace edgeforge::criteria
