#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "mvcs/data_model.hpp"

namespace mvcs {

// Hopkins spatial-randomness statistic. Around 0.5 for uniformly scattered
// data, towards 1 for clustered data.
struct HopkinsResult {
  double value = 0.0;   // sum_u / (sum_u + sum_w)
  std::size_t m = 0;    // probes of each kind
  std::uint64_t seed = 0;
  double sum_u = 0.0;   // NN distances, uniform probes -> data
  double sum_w = 0.0;   // NN distances, sampled instances -> rest of data
};

// min(100, floor(N / 10)), at least 1.
std::size_t default_hopkins_probes(std::size_t num_instances);

// Samples m instances without replacement and m uniform points in the
// bounding box of the data. Throws Error(MTooLarge) unless 1 <= m < N.
HopkinsResult hopkins(const Matrix& matrix, std::size_t m, std::uint64_t seed);

// Hopkins on the concatenation of the standardized views.
HopkinsResult hopkins(const MultiViewDataset& dataset, std::optional<std::size_t> m,
                      std::uint64_t seed);

}  // namespace mvcs
