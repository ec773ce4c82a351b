#include "mvcs/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mvcs/error.hpp"

namespace mvcs {

namespace {

// exp(-z*z/2) underflows to +0.0 for |z| > 38.6.
constexpr double kKernelWindow = 39.0;

enum class Slope { None, Up, Down };

}  // namespace

GaussianKde::GaussianKde(std::span<const double> samples) : sorted_(samples.begin(), samples.end()) {
  if (sorted_.empty()) throw Error(ErrorCode::InvalidArgument, "KDE needs at least one sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double GaussianKde::evaluate(double x, double bandwidth) const {
  const double reach = kKernelWindow * bandwidth;
  auto first = std::lower_bound(sorted_.begin(), sorted_.end(), x - reach);
  auto last = std::upper_bound(first, sorted_.end(), x + reach);
  double sum = 0.0;
  for (auto it = first; it != last; ++it) {
    const double z = (x - *it) / bandwidth;
    sum += std::exp(-0.5 * z * z);
  }
  return sum / (static_cast<double>(sorted_.size()) * bandwidth * std::sqrt(2.0 * std::numbers::pi));
}

std::vector<double> GaussianKde::evaluate(std::span<const double> query, double bandwidth) const {
  std::vector<double> out(query.size());
  for (std::size_t i = 0; i < query.size(); ++i) out[i] = evaluate(query[i], bandwidth);
  return out;
}

std::vector<double> GaussianKde::grid(double bandwidth, std::size_t grid_points) const {
  const double lo = min() - 3.0 * bandwidth;
  const double hi = max() + 3.0 * bandwidth;
  const double step = (hi - lo) / static_cast<double>(grid_points - 1);
  std::vector<double> xs(grid_points);
  for (std::size_t g = 0; g < grid_points; ++g) xs[g] = lo + static_cast<double>(g) * step;
  xs.back() = hi;
  return xs;
}

std::size_t GaussianKde::mode_count(double bandwidth, std::size_t grid_points,
                                    std::size_t stop_above) const {
  const std::vector<double> xs = grid(bandwidth, grid_points);
  const double reach = kKernelWindow * bandwidth;

  // The grid is ascending, so the kernel window slides monotonically.
  std::size_t first = 0;
  std::size_t last = 0;
  const std::size_t n = sorted_.size();

  std::size_t modes = 0;
  Slope slope = Slope::None;
  double previous = 0.0;
  for (std::size_t g = 0; g < grid_points; ++g) {
    const double x = xs[g];
    while (first < n && sorted_[first] < x - reach) ++first;
    if (last < first) last = first;
    while (last < n && sorted_[last] <= x + reach) ++last;

    // The constant 1/(N h sqrt(2 pi)) does not move the maxima.
    double value = 0.0;
    for (std::size_t i = first; i < last; ++i) {
      const double z = (x - sorted_[i]) / bandwidth;
      value += std::exp(-0.5 * z * z);
    }

    if (g > 0) {
      if (value > previous) {
        slope = Slope::Up;
      } else if (value < previous) {
        if (slope == Slope::Up) {
          ++modes;
          if (modes > stop_above) return modes;
        }
        slope = Slope::Down;
      }
    }
    previous = value;
  }
  return modes;
}

std::vector<double> kde_eval(std::span<const double> samples, double bandwidth,
                             std::span<const double> query) {
  if (!(bandwidth > 0.0)) throw Error(ErrorCode::InvalidArgument, "bandwidth must be positive");
  return GaussianKde(samples).evaluate(query, bandwidth);
}

std::size_t mode_count(std::span<const double> samples, double bandwidth, std::size_t grid_points) {
  if (!(bandwidth > 0.0)) throw Error(ErrorCode::InvalidArgument, "bandwidth must be positive");
  if (grid_points < 3) throw Error(ErrorCode::InvalidArgument, "grid_points must be at least 3");
  return GaussianKde(samples).mode_count(bandwidth, grid_points);
}

CriticalBandwidth critical_bandwidth(std::span<const double> samples, std::size_t grid_points,
                                     double rel_tol) {
  if (samples.empty()) throw Error(ErrorCode::InvalidArgument, "no samples");
  for (double x : samples) {
    if (!std::isfinite(x)) throw Error(ErrorCode::BracketFailure, "non-finite sample");
  }
  const GaussianKde kde(samples);
  CriticalBandwidth result;
  const double range = kde.max() - kde.min();
  if (range == 0.0) return result;
  if (!std::isfinite(range)) throw Error(ErrorCode::BracketFailure, "non-finite sample spread");

  auto unimodal = [&](double h) { return kde.mode_count(h, grid_points, 1) <= 1; };

  // A kernel much narrower than the grid spacing can fall between grid
  // points and look unimodal. Raise lo until the grid resolves more than one
  // mode; data still unimodal at 0.1 * range score 0.
  double hi = 0.1 * range;
  double lo = 1e-4 * range;
  while (unimodal(lo)) {
    lo *= 2.0;
    if (lo >= hi) {
      result.bracket_hi = hi;
      return result;
    }
  }

  int doublings = 0;
  while (!unimodal(hi)) {
    lo = std::max(lo, hi);
    hi *= 2.0;
    if (++doublings > 40 || !std::isfinite(hi)) {
      throw Error(ErrorCode::BracketFailure, "no unimodal bandwidth below 2^40 * 0.1 * range");
    }
  }

  while (hi - lo > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (unimodal(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
    ++result.iterations;
  }
  result.value = hi;
  result.bracket_lo = lo;
  result.bracket_hi = hi;
  return result;
}

CriticalBandwidth critical_bandwidth(std::span<const double> samples, const ScoreConfig& config) {
  return critical_bandwidth(samples, config.grid_points, config.bisect_rel_tol);
}

}  // namespace mvcs
