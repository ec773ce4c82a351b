#include "mvcs/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "mvcs/error.hpp"
#include "mvcs/rng.hpp"

namespace mvcs {

std::size_t default_hopkins_probes(std::size_t num_instances) {
  return std::max<std::size_t>(1, std::min<std::size_t>(100, num_instances / 10));
}

namespace {

double nearest_distance(const Matrix& points, const Vector& query, std::size_t skip) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < points.cols(); ++j) {
    if (static_cast<std::size_t>(j) == skip) continue;
    best = std::min(best, (points.col(j) - query).squaredNorm());
  }
  return std::sqrt(best);
}

}  // namespace

HopkinsResult hopkins(const Matrix& matrix, std::size_t m, std::uint64_t seed) {
  const std::size_t n = static_cast<std::size_t>(matrix.rows());
  if (m < 1 || m >= n) {
    throw Error(ErrorCode::MTooLarge,
                "m = " + std::to_string(m) + " needs 1 <= m < N = " + std::to_string(n));
  }
  check_finite(matrix, "hopkins input");

  const Matrix points = matrix.transpose();
  const Vector lower = points.rowwise().minCoeff();
  const Vector upper = points.rowwise().maxCoeff();

  Rng rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Partial Fisher-Yates: the first m entries are a uniform sample.
  for (std::size_t i = 0; i < m; ++i) std::swap(order[i], order[i + rng.index(n - i)]);

  HopkinsResult result;
  result.m = m;
  result.seed = seed;
  Vector probe(points.rows());
  for (std::size_t j = 0; j < m; ++j) {
    for (Eigen::Index c = 0; c < probe.size(); ++c) probe[c] = rng.uniform(lower[c], upper[c]);
    result.sum_u += nearest_distance(points, probe, n);
    result.sum_w += nearest_distance(points, points.col(static_cast<Eigen::Index>(order[j])), order[j]);
  }
  const double total = result.sum_u + result.sum_w;
  result.value = total > 0.0 ? result.sum_u / total : 0.5;
  return result;
}

HopkinsResult hopkins(const MultiViewDataset& dataset, std::optional<std::size_t> m,
                      std::uint64_t seed) {
  const Matrix joint = concatenate_views(standardized_views(dataset));
  return hopkins(joint, m.value_or(default_hopkins_probes(dataset.num_instances())), seed);
}

}  // namespace mvcs
