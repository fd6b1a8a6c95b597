#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "doctest.h"
#include "../oracles.hpp"
#include "omega/error.hpp"
#include "omega/generators.hpp"
#include "omega/graph.hpp"
#include "omega/random.hpp"
#include "omega/sparse.hpp"

using namespace omega;

namespace {

SparseSymmetricMatrix dense2(double a, double b, double c) {
  std::vector<Triplet> t{{0, 0, a}, {0, 1, b}, {1, 1, c}};
  return SparseSymmetricMatrix::from_triplets(2, t);
}

Eigen::MatrixXd to_dense(const SparseSymmetricMatrix& a) {
  const auto n = static_cast<Eigen::Index>(a.dimension());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    auto cols = a.row_columns(i);
    auto vals = a.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(cols[k])) = vals[k];
  }
  return m;
}

Eigen::MatrixXd to_dense(const CholeskyFactor& k) {
  const auto n = static_cast<Eigen::Index>(k.dimension());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j)
      m(i, j) = k(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  return m;
}

double residual(const SparseSymmetricMatrix& a, const std::vector<double>& x,
                const std::vector<double>& b) {
  auto ax = matvec(a, x);
  for (std::size_t i = 0; i < ax.size(); ++i) ax[i] -= b[i];
  return norm2(ax);
}

}  // namespace

TEST_CASE("SparseSymmetricMatrix validation") {
  CHECK_THROWS_AS(SparseSymmetricMatrix(2, {0, 1, 2}, {1, 1}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(SparseSymmetricMatrix(2, {0, 2, 3}, {1, 0, 1}, {1.0, 1.0, 1.0}),
                  std::invalid_argument);
  const auto a = dense2(4, 1, 3);
  CHECK(a.nnz() == 4);
  CHECK(a(1, 0) == 1.0);
  CHECK(a.shifted(0.5)(0, 0) == 4.5);
  CHECK(a.diagonally_scaled(0.5)(1, 1) == 4.5);
  CHECK(a.diagonally_scaled(0.5)(0, 1) == 1.0);
}

TEST_CASE("matvec") {
  const auto L = laplacian(generators::path(3));
  CHECK(matvec(L, std::vector<double>{1, 1, 1}) == std::vector<double>{0, 0, 0});
  CHECK(matvec(L, std::vector<double>{1, 0, 0}) == std::vector<double>{1, -1, 0});
  const std::vector<double> x{3.5, -2, 7};
  CHECK(matvec(SparseSymmetricMatrix::identity(3), x) == x);
  CHECK_THROWS_AS(matvec(L, std::vector<double>{1, 1}), std::invalid_argument);

  // Columns read off by unit vectors.
  const auto R = laplacian(generators::random_partition(2, 10, 0.5, 0.1, 3));
  for (std::size_t i = 0; i < R.dimension(); ++i) {
    std::vector<double> e(R.dimension(), 0.0);
    e[i] = 1.0;
    const auto col = matvec(R, e);
    for (std::size_t j = 0; j < R.dimension(); ++j) CHECK(col[j] == R(j, i));
  }
}

TEST_CASE("incomplete_cholesky examples") {
  SUBCASE("diagonal") {
    const auto k = incomplete_cholesky(dense2(4, 0, 9));
    CHECK(k(0, 0) == doctest::Approx(2.0));
    CHECK(k(1, 1) == doctest::Approx(3.0));
    CHECK(k(1, 0) == 0.0);
    CHECK_FALSE(k.fallback_fired());
  }
  SUBCASE("2x2 matches dense Cholesky") {
    const auto a = dense2(4, 1, 3);
    const auto k = incomplete_cholesky(a);
    const Eigen::MatrixXd ref = Eigen::LLT<Eigen::MatrixXd>(to_dense(a)).matrixL();
    CHECK(k(0, 0) == doctest::Approx(ref(0, 0)).epsilon(1e-14));
    CHECK(k(1, 0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(k(1, 1) == doctest::Approx(std::sqrt(2.75)).epsilon(1e-14));
  }
  SUBCASE("tridiagonal factor is exact") {
    const auto a = laplacian(generators::path(3)).shifted(0.01);
    const Eigen::MatrixXd kl = to_dense(incomplete_cholesky(a));
    const Eigen::MatrixXd ad = to_dense(a);
    CHECK((kl * kl.transpose() - ad).norm() <= 1e-10 * ad.norm());
  }
  SUBCASE("pattern and positive diagonal") {
    const auto a = laplacian(generators::grid(6, 7)).shifted(1e-6);
    const auto k = incomplete_cholesky(a);
    for (std::size_t i = 0; i < a.dimension(); ++i) {
      CHECK(k.diagonal(i) > 0.0);
      for (std::size_t j : k.row_columns(i)) {
        CHECK(j <= i);
        CHECK(a(i, j) != 0.0);
      }
    }
  }
  SUBCASE("breakdown triggers the diagonal shift") {
    // The second pivot 1 - 1.0005^2 < 0 until diag(A) is inflated.
    const auto k = incomplete_cholesky(dense2(1, 1.0005, 1));
    CHECK(k.fallback_fired());
    CHECK(k.diagonal_shift() == doctest::Approx(1e-3));
    CHECK(k.diagonal(1) > 0.0);
  }
  SUBCASE("hopeless breakdown is reported") {
    CHECK_THROWS_AS(incomplete_cholesky(dense2(1, 2, 1)), NumericalError);
  }
}

TEST_CASE("precond_solve examples") {
  const auto kd = incomplete_cholesky(dense2(4, 0, 9));
  const auto z1 = precond_solve(kd, std::vector<double>{4, 9});
  CHECK(z1[0] == doctest::Approx(1.0));
  CHECK(z1[1] == doctest::Approx(1.0));

  const auto ki = incomplete_cholesky(SparseSymmetricMatrix::identity(3));
  CHECK(precond_solve(ki, std::vector<double>{1, -2, 3}) == std::vector<double>{1, -2, 3});

  const auto k = incomplete_cholesky(dense2(4, 1, 3));
  const auto z = precond_solve(k, std::vector<double>{1, 2});
  CHECK(z[0] == doctest::Approx(1.0 / 11.0).epsilon(1e-14));
  CHECK(z[1] == doctest::Approx(7.0 / 11.0).epsilon(1e-14));
}

TEST_CASE("pcg_solve examples") {
  SUBCASE("scaled identity") {
    const double sigma = 1e-3;
    const auto a = SparseSymmetricMatrix::identity(4, sigma);
    const std::vector<double> b{0.5, -0.5, 0.5, -0.5};
    const auto res = pcg_solve(a, b, incomplete_cholesky(a), {0.1, 100});
    CHECK(res.iterations <= 1);
    for (std::size_t i = 0; i < 4; ++i) CHECK(res.x[i] == doctest::Approx(b[i] / sigma));
  }
  SUBCASE("exact preconditioner converges in one iteration") {
    const auto a = dense2(4, 1, 3);
    const auto res = pcg_solve(a, std::vector<double>{1, 2}, incomplete_cholesky(a), {1e-8, 100});
    CHECK(res.iterations == 1);
    CHECK(res.converged);
    CHECK(res.x[0] == doctest::Approx(1.0 / 11.0));
    CHECK(res.x[1] == doctest::Approx(7.0 / 11.0));
  }
  SUBCASE("C8 against a dense solve") {
    const auto a = laplacian(generators::cycle(8)).shifted(1e-6);
    std::vector<double> b(8, -1.0 / 8.0);
    b[0] += 1.0;
    const auto res = pcg_solve(a, b, incomplete_cholesky(a), {1e-9, 1000});
    CHECK(residual(a, res.x, b) < 1e-6);
    const Eigen::VectorXd ref = to_dense(a).ldlt().solve(Eigen::Map<Eigen::VectorXd>(b.data(), 8));
    for (Eigen::Index i = 0; i < 8; ++i) CHECK(res.x[i] == doctest::Approx(ref(i)).epsilon(1e-6));
  }
  SUBCASE("exact factors on tridiagonal systems give one-iteration solves") {
    for (std::size_t n : {5u, 20u, 60u}) {
      const auto a = laplacian(generators::path(n)).shifted(0.1);
      std::vector<double> b(n);
      Rng rng(n);
      for (double& v : b) v = rng.uniform(-1.0, 1.0);
      const auto res = pcg_solve(a, b, incomplete_cholesky(a), {1e-12, 100});
      CHECK(res.iterations == 1);
      CHECK(residual(a, res.x, b) <= 1e-8 * norm2(b));
    }
  }
  SUBCASE("max_iterations returns the iterate") {
    const auto a = laplacian(generators::grid(10, 10)).shifted(1e-6);
    std::vector<double> b(100, -0.01);
    b[0] += 1.0;
    const auto res = pcg_solve(a, b, incomplete_cholesky(a), {1e-14, 2});
    CHECK(res.iterations == 2);
    CHECK_FALSE(res.converged);
    CHECK(res.x.size() == 100);
  }
  SUBCASE("indefinite matrix is reported") {
    const auto a = dense2(1, 0, -1);
    const auto k = incomplete_cholesky(SparseSymmetricMatrix::identity(2));
    CHECK_THROWS_AS(pcg_solve(a, std::vector<double>{0, 1}, k, {1e-12, 10}), NumericalError);
  }
}

// The 2-norm residual of CG is not monotone in general; the A-norm of the
// error is, so that is what gets checked per recorded iteration.
TEST_CASE("PCG error decreases in the energy norm") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Graph g = generators::random_partition(1, 20 + 12 * seed, 0.15, 0.0, seed);
    const auto a = laplacian(g).shifted(1e-2);
    const std::size_t n = a.dimension();
    const Eigen::MatrixXd ad = to_dense(a);
    std::vector<double> b(n);
    Rng rng(seed);
    for (double& v : b) v = rng.uniform(-1.0, 1.0);
    const Eigen::VectorXd xstar = ad.ldlt().solve(Eigen::Map<Eigen::VectorXd>(b.data(), n));
    std::vector<double> errors;
    pcg_solve(a, b, incomplete_cholesky(a), {1e-13, 500},
              [&](std::size_t, std::span<const double> x) {
                Eigen::VectorXd e(n);
                for (std::size_t i = 0; i < n; ++i) e(i) = x[i] - xstar(i);
                errors.push_back(std::sqrt(e.dot(ad * e)));
              });
    REQUIRE(errors.size() >= 2);
    for (std::size_t i = 1; i < errors.size(); ++i)
      CHECK(errors[i] <= errors[i - 1] + 1e-10 * errors.front());
  }
}

TEST_CASE("dot and norm") {
  std::vector<double> a(37), b(37);
  double expect = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = static_cast<double>(i) * 0.5;
    b[i] = 1.0 - static_cast<double>(i % 3);
    expect += a[i] * b[i];
  }
  CHECK(dot(a, b) == doctest::Approx(expect));
  CHECK(norm2(std::vector<double>{3, 4}) == doctest::Approx(5.0));
}
