#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mvcs/data_model.hpp"

namespace mvcs {

/// Gaussian kernel density estimate over a fixed 1-D sample set,
///
///   f_h(x) = 1/(N h) * sum_i phi((x - y_i) / h),
///
/// with phi the standard normal density. Samples are stored sorted so each
/// evaluation only visits samples within the kernel's non-underflow window.
/// Terms outside the window are exactly zero in double precision, so the
/// truncated sum equals the full sum bit for bit.
class GaussianKde {
 public:
  explicit GaussianKde(std::span<const double> samples);

  std::size_t size() const { return sorted_.size(); }
  double min() const { return sorted_.front(); }
  double max() const { return sorted_.back(); }
  const std::vector<double>& sorted_samples() const { return sorted_; }

  double evaluate(double x, double bandwidth) const;
  std::vector<double> evaluate(std::span<const double> query, double bandwidth) const;

  /// Number of strict interior local maxima of f_h sampled on a uniform grid
  /// of grid_points over [min - 3h, max + 3h]. A run of equal grid values
  /// flanked by strictly smaller neighbours counts once. Counting stops early
  /// once it exceeds stop_above.
  std::size_t mode_count(double bandwidth, std::size_t grid_points,
                         std::size_t stop_above = static_cast<std::size_t>(-1)) const;

  /// The grid used by mode_count.
  std::vector<double> grid(double bandwidth, std::size_t grid_points) const;

 private:
  std::vector<double> sorted_;
};

std::vector<double> kde_eval(std::span<const double> samples, double bandwidth,
                             std::span<const double> query);

std::size_t mode_count(std::span<const double> samples, double bandwidth,
                       std::size_t grid_points = 1024);

/// Result of the search for the smallest bandwidth at which the KDE is
/// unimodal.
struct CriticalBandwidth {
  double value = 0.0;
  std::size_t iterations = 0;  // bisection steps
  double bracket_lo = 0.0;     // last bandwidth seen with more than one mode
  double bracket_hi = 0.0;     // last bandwidth seen with at most one mode
};

/// Bisection on the mode count, which is non-increasing in h for the
/// Gaussian kernel. The bracket starts at h_lo = 1e-4 * range and
/// h_hi = 0.1 * range, doubling h_hi (at most 40 times) until unimodal.
/// Stops once (h_hi - h_lo) <= rel_tol * h_hi and returns h_hi. Samples with
/// at most one distinct value give 0. When the grid cannot resolve the kernel
/// at h_lo (one mode despite distinct samples), h_lo is doubled until it can;
/// samples still unimodal at 0.1 * range give 0.
///
/// Throws Error(BracketFailure) for non-finite samples or when doubling never
/// reaches a unimodal bandwidth.
CriticalBandwidth critical_bandwidth(std::span<const double> samples, std::size_t grid_points,
                                     double rel_tol);

CriticalBandwidth critical_bandwidth(std::span<const double> samples, const ScoreConfig& config);

}  // namespace mvcs
