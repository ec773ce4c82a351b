#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mvcs/data_model.hpp"

namespace mvcs {

// k nearest neighbours of every instance in one view, self excluded. Row i
// lists indices by ascending Euclidean distance, ties by ascending index.
class NeighborTable {
 public:
  NeighborTable(std::size_t view_index, std::size_t num_instances, std::size_t k,
                std::vector<std::size_t> flat_indices);

  std::size_t view_index() const { return view_index_; }
  std::size_t num_instances() const { return n_; }
  std::size_t k() const { return k_; }

  std::span<const std::size_t> row(std::size_t i) const {
    return {indices_.data() + i * k_, k_};
  }

  friend bool operator==(const NeighborTable& a, const NeighborTable& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.indices_ == b.indices_;
  }

 private:
  std::size_t view_index_;
  std::size_t n_;
  std::size_t k_;
  std::vector<std::size_t> indices_;
};

// Exact brute-force search. Throws Error(KTooLarge) unless 1 <= k < N.
NeighborTable knn_per_view(const Matrix& view, std::size_t k, std::size_t view_index = 0);

// |N_i^(v) ∩ N_i^(u)| / k for every instance i.
// Throws Error(ShapeMismatch) if N or k differ.
std::vector<double> pair_agreement(const NeighborTable& a, const NeighborTable& b);

struct ConsistencyScore {
  std::vector<double> per_instance;  // a_i, averaged over view pairs
  double overall = 0.0;              // mean of a_i
};

// Averages pair_agreement over all unordered view pairs, then over instances.
// Throws Error(SingleView) with fewer than two tables.
ConsistencyScore neighborhood_consistency(std::span<const NeighborTable> tables);

// Standardizes each view, builds its table with config.k and averages.
ConsistencyScore neighborhood_consistency(const MultiViewDataset& dataset,
                                          const ScoreConfig& config);

}  // namespace mvcs
