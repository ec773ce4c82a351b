#include "mvcs/neighborhood.hpp"

#include <algorithm>
#include <utility>

#include "mvcs/error.hpp"
#include "mvcs/parallel.hpp"

namespace mvcs {

NeighborTable::NeighborTable(std::size_t view_index, std::size_t num_instances, std::size_t k,
                             std::vector<std::size_t> flat_indices)
    : view_index_(view_index), n_(num_instances), k_(k), indices_(std::move(flat_indices)) {
  if (indices_.size() != n_ * k_)
    throw Error(ErrorCode::ShapeMismatch, "neighbor table size does not match N * k");
}

NeighborTable knn_per_view(const Matrix& view, std::size_t k, std::size_t view_index) {
  const std::size_t n = static_cast<std::size_t>(view.rows());
  if (k < 1 || k >= n) {
    throw Error(ErrorCode::KTooLarge,
                "k = " + std::to_string(k) + " needs 1 <= k < N = " + std::to_string(n));
  }
  // Instances as contiguous columns.
  const Matrix points = view.transpose();
  std::vector<std::size_t> flat(n * k);

  parallel_for(n, [&](std::size_t i) {
    std::vector<std::pair<double, std::size_t>> candidates;
    candidates.reserve(n - 1);
    const auto pi = points.col(static_cast<Eigen::Index>(i));
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d2 = (points.col(static_cast<Eigen::Index>(j)) - pi).squaredNorm();
      candidates.emplace_back(d2, j);
    }
    // Pair ordering gives distance first, index second.
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k),
                      candidates.end());
    for (std::size_t r = 0; r < k; ++r) flat[i * k + r] = candidates[r].second;
  });
  return NeighborTable(view_index, n, k, std::move(flat));
}

namespace {

// Shared-neighbor count per instance.
std::vector<std::size_t> shared_counts(const NeighborTable& a, const NeighborTable& b) {
  if (a.num_instances() != b.num_instances() || a.k() != b.k()) {
    throw Error(ErrorCode::ShapeMismatch, "neighbor tables differ in N or k");
  }
  const std::size_t n = a.num_instances();
  const std::size_t k = a.k();
  std::vector<std::size_t> out(n);
  std::vector<std::size_t> ra(k), rb(k);
  for (std::size_t i = 0; i < n; ++i) {
    auto row_a = a.row(i);
    auto row_b = b.row(i);
    ra.assign(row_a.begin(), row_a.end());
    rb.assign(row_b.begin(), row_b.end());
    std::sort(ra.begin(), ra.end());
    std::sort(rb.begin(), rb.end());
    std::size_t shared = 0;
    for (std::size_t x = 0, y = 0; x < k && y < k;) {
      if (ra[x] < rb[y]) {
        ++x;
      } else if (rb[y] < ra[x]) {
        ++y;
      } else {
        ++shared;
        ++x;
        ++y;
      }
    }
    out[i] = shared;
  }
  return out;
}

}  // namespace

std::vector<double> pair_agreement(const NeighborTable& a, const NeighborTable& b) {
  const auto counts = shared_counts(a, b);
  std::vector<double> out(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    out[i] = static_cast<double>(counts[i]) / static_cast<double>(a.k());
  return out;
}

ConsistencyScore neighborhood_consistency(std::span<const NeighborTable> tables) {
  if (tables.size() < 2)
    throw Error(ErrorCode::SingleView, "neighborhood consistency needs at least two views");
  const std::size_t n = tables.front().num_instances();
  const std::size_t k = tables.front().k();

  // Integer accumulation keeps the result independent of view order.
  std::vector<std::size_t> shared(n, 0);
  std::size_t pairs = 0;
  for (std::size_t v = 0; v < tables.size(); ++v) {
    for (std::size_t u = v + 1; u < tables.size(); ++u) {
      const auto counts = shared_counts(tables[v], tables[u]);
      for (std::size_t i = 0; i < n; ++i) shared[i] += counts[i];
      ++pairs;
    }
  }

  ConsistencyScore score;
  score.per_instance.resize(n);
  const double denominator = static_cast<double>(pairs) * static_cast<double>(k);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    score.per_instance[i] = static_cast<double>(shared[i]) / denominator;
    total += score.per_instance[i];
  }
  score.overall = total / static_cast<double>(n);
  return score;
}

ConsistencyScore neighborhood_consistency(const MultiViewDataset& dataset,
                                          const ScoreConfig& config) {
  if (dataset.num_views() < 2)
    throw Error(ErrorCode::SingleView, "neighborhood consistency needs at least two views");
  std::vector<NeighborTable> tables;
  tables.reserve(dataset.num_views());
  for (std::size_t v = 0; v < dataset.num_views(); ++v)
    tables.push_back(knn_per_view(standardize(dataset.view(v)), config.k, v));
  return neighborhood_consistency(tables);
}

}  // namespace mvcs
