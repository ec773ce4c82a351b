#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mvcs/data_model.hpp"

namespace mvcs {

// One-dimensional sample set obtained from a view (or the concatenated
// views) by projecting onto the first principal direction.
struct Projection1D {
  std::vector<double> values;
  double sigma = 0.0;  // population standard deviation of values
};

struct PowerIterationOptions {
  double tolerance = 1e-10;   // on the change of the unit direction
  std::size_t max_iterations = 1000;
  std::uint64_t seed = 0;     // fixes the start vector
};

// Top eigenvector of the covariance X^T X / N of an already centered matrix,
// by power iteration with the covariance applied implicitly (never formed).
// Returns the zero vector for an all-zero matrix.
Vector top_eigenvector_power(const Matrix& centered, const PowerIterationOptions& options = {});

// Same quantity from a dense symmetric eigendecomposition of the d x d
// covariance.
Vector top_eigenvector_dense(const Matrix& centered);

// Column count up to which principal_direction uses the dense solver.
inline constexpr Eigen::Index kDenseEigenMaxDim = 64;

// Unit principal direction with the sign fixed so that the loading of
// largest magnitude (first one on ties) is positive.
Vector principal_direction(const Matrix& matrix);

// values = centered(matrix) * principal_direction(matrix).
Projection1D principal_projection(const Matrix& matrix);

double population_stddev(const std::vector<double>& values);

}  // namespace mvcs
