#include <doctest.h>

#include <cmath>

#include "mvcs/projection.hpp"
#include "test_helpers.hpp"

using namespace mvcs;

namespace {

// Columns scaled by a decaying spectrum and rotated, so the top eigenvalue
// has a clear gap.
Matrix anisotropic(Rng& rng, Eigen::Index n, Eigen::Index d) {
  Matrix x = test::random_matrix(rng, n, d);
  for (Eigen::Index c = 0; c < d; ++c) x.col(c) *= 4.0 / (1.0 + c);
  return x * test::random_rotation(rng, d).transpose();
}

Matrix centered(const Matrix& m) { return m.rowwise() - m.colwise().mean(); }

double abs_cosine(const Vector& a, const Vector& b) {
  return std::abs(a.dot(b)) / (a.norm() * b.norm());
}

}  // namespace

TEST_CASE("perfectly correlated columns project onto the diagonal") {
  Matrix x(5, 2);
  x << -2, -2, -1, -1, 0, 0, 1, 1, 2, 2;
  const Vector dir = principal_direction(x);
  CHECK(dir[0] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(dir[1] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  const Projection1D p = principal_projection(x);
  for (int i = 0; i < 5; ++i)
    CHECK(p.values[static_cast<std::size_t>(i)] ==
          doctest::Approx(std::sqrt(2.0) * (i - 2)).epsilon(1e-12));
  CHECK(p.sigma == doctest::Approx(2.0).epsilon(1e-12));  // sqrt(2) * sqrt(2)
}

TEST_CASE("degenerate inputs") {
  const Projection1D zero = principal_projection(Matrix::Zero(6, 3));
  CHECK(zero.sigma == 0.0);
  for (double v : zero.values) CHECK(v == 0.0);

  Matrix col(4, 1);
  col << 3, 5, 7, 9;
  const Projection1D p = principal_projection(col);
  CHECK(p.values == std::vector<double>{-3, -1, 1, 3});
}

TEST_CASE("projection invariants") {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index d = 1 + trial % 7;
    const Matrix x = anisotropic(rng, 50 + trial, d) + Matrix::Constant(50 + trial, d, 2.0);
    const Projection1D p = principal_projection(x);
    CHECK(std::abs(test::mean_of(p.values)) < 1e-10);
    CHECK(p.sigma == doctest::Approx(population_stddev(p.values)).epsilon(1e-14));

    // No unit direction yields a larger projected variance.
    const Matrix c = centered(x);
    for (int probe = 0; probe < 100; ++probe) {
      Vector u = test::random_matrix(rng, d, 1);
      u.normalize();
      const double var = (c * u).squaredNorm() / static_cast<double>(x.rows());
      CHECK(var <= p.sigma * p.sigma * (1.0 + 1e-12));
    }

    // Largest-magnitude loading is positive.
    const Vector dir = principal_direction(x);
    Eigen::Index arg = 0;
    dir.cwiseAbs().maxCoeff(&arg);
    CHECK(dir[arg] > 0.0);
  }
}

TEST_CASE("rotation changes the projection by at most a sign") {
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix x = anisotropic(rng, 80, 4);
    const Matrix rotated = x * test::random_rotation(rng, 4);
    const auto a = principal_projection(x).values;
    const auto b = principal_projection(rotated).values;
    double same = 0.0, flipped = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      same = std::max(same, std::abs(a[i] - b[i]));
      flipped = std::max(flipped, std::abs(a[i] + b[i]));
    }
    CHECK(std::min(same, flipped) < 1e-9);
  }
}

TEST_CASE("power iteration agrees with the dense eigendecomposition") {
  Rng rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index d = 2 + trial % 9;
    const Matrix c = centered(anisotropic(rng, 200, d));
    const Vector power = top_eigenvector_power(c, {.seed = static_cast<std::uint64_t>(trial)});
    const Vector dense = top_eigenvector_dense(c);
    CHECK(abs_cosine(power, dense) >= 1.0 - 1e-8);
  }

  SUBCASE("above the dense cutoff") {
    const Eigen::Index d = kDenseEigenMaxDim + 36;
    const Matrix x = anisotropic(rng, 300, d);
    const Vector used = principal_direction(x);
    const Vector dense = top_eigenvector_dense(centered(x));
    CHECK(abs_cosine(used, dense) >= 1.0 - 1e-8);
  }

  CHECK(top_eigenvector_power(Matrix::Zero(5, 3)).isZero(0.0));
}
