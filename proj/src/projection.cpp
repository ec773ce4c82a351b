#include "mvcs/projection.hpp"

#include <cmath>

#include "mvcs/rng.hpp"

namespace mvcs {

namespace {

Matrix centered_copy(const Matrix& matrix) {
  const Eigen::RowVectorXd mean = matrix.colwise().mean();
  return matrix.rowwise() - mean;
}

void fix_sign(Vector& direction) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < direction.size(); ++i)
    if (std::abs(direction[i]) > std::abs(direction[best])) best = i;
  if (direction.size() > 0 && direction[best] < 0.0) direction = -direction;
}

}  // namespace

Vector top_eigenvector_power(const Matrix& centered, const PowerIterationOptions& options) {
  const Eigen::Index d = centered.cols();
  Rng rng(options.seed);
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = rng.uniform(-1.0, 1.0);
  if (v.norm() == 0.0) v.setOnes();
  v.normalize();

  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    Vector w = centered.transpose() * (centered * v);
    const double norm = w.norm();
    if (norm == 0.0) return Vector::Zero(d);
    w /= norm;
    const double change = std::min((w - v).norm(), (w + v).norm());
    v = std::move(w);
    if (change < options.tolerance) break;
  }
  return v;
}

Vector top_eigenvector_dense(const Matrix& centered) {
  const Matrix covariance =
      (centered.transpose() * centered) / static_cast<double>(centered.rows());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(covariance);
  // Eigenvalues come back in increasing order.
  return solver.eigenvectors().col(covariance.cols() - 1);
}

namespace {

Vector direction_of_centered(const Matrix& centered) {
  if (centered.isZero(0.0)) return Vector::Zero(centered.cols());
  Vector direction = centered.cols() <= kDenseEigenMaxDim ? top_eigenvector_dense(centered)
                                                          : top_eigenvector_power(centered);
  fix_sign(direction);
  return direction;
}

}  // namespace

Vector principal_direction(const Matrix& matrix) {
  return direction_of_centered(centered_copy(matrix));
}

double population_stddev(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  double mean = 0.0;
  for (double x : values) mean += x;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double x : values) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(values.size()));
}

Projection1D principal_projection(const Matrix& matrix) {
  const Matrix centered = centered_copy(matrix);
  Projection1D out;
  out.values.assign(static_cast<std::size_t>(matrix.rows()), 0.0);
  if (centered.isZero(0.0)) return out;

  const Vector direction = direction_of_centered(centered);
  const Vector y = centered * direction;
  for (Eigen::Index i = 0; i < y.size(); ++i) out.values[static_cast<std::size_t>(i)] = y[i];
  out.sigma = population_stddev(out.values);
  return out;
}

}  // namespace mvcs
