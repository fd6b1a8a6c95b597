#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "omega/sparse_matrix.hpp"

namespace omega {

// y = A x. Throws std::invalid_argument on dimension mismatch.
std::vector<double> matvec(const SparseSymmetricMatrix& a, std::span<const double> x);
void matvec(const SparseSymmetricMatrix& a, std::span<const double> x, std::span<double> y);

// Lower-triangular factor K_L of an incomplete Cholesky factorization with
// zero fill-in, so that K = K_L K_L^T approximates A. Row i holds the columns
// j <= i of the lower-triangle pattern of A, diagonal last.
class CholeskyFactor {
 public:
  CholeskyFactor() = default;
  CholeskyFactor(std::size_t n, std::vector<std::size_t> row_offsets,
                 std::vector<std::size_t> column_indices, std::vector<double> values,
                 double diagonal_shift);

  std::size_t dimension() const { return n_; }
  std::span<const std::size_t> row_columns(std::size_t i) const {
    return {column_indices_.data() + row_offsets_[i], row_offsets_[i + 1] - row_offsets_[i]};
  }
  std::span<const double> row_values(std::size_t i) const {
    return {values_.data() + row_offsets_[i], row_offsets_[i + 1] - row_offsets_[i]};
  }
  double diagonal(std::size_t i) const { return values_[row_offsets_[i + 1] - 1]; }

  // Entry (i, j) of K_L, zero outside the pattern.
  double operator()(std::size_t i, std::size_t j) const;

  // beta such that the factorization was taken of A + beta * diag(A);
  // zero when no breakdown fallback was needed.
  double diagonal_shift() const { return diagonal_shift_; }
  bool fallback_fired() const { return diagonal_shift_ > 0.0; }

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> row_offsets_{0};
  std::vector<std::size_t> column_indices_;
  std::vector<double> values_;
  double diagonal_shift_ = 0.0;
};

// IC(0). On a non-positive pivot the factorization restarts on
// A + beta * diag(A) with beta = 1e-3, doubling beta up to 8 times before
// throwing NumericalError.
CholeskyFactor incomplete_cholesky(const SparseSymmetricMatrix& a);

// Solves K_L K_L^T z = r by forward then backward substitution.
std::vector<double> precond_solve(const CholeskyFactor& k, std::span<const double> r);

struct PcgParams {
  double tolerance = 0.1;
  std::size_t max_iterations = 100;
};

struct PcgResult {
  std::vector<double> x;
  std::size_t iterations = 0;
  bool converged = false;
  double rho = 0.0;  // final r^T z
};

// Called after each iteration with (iteration, current x).
using PcgObserver = std::function<void(std::size_t, std::span<const double>)>;

// Preconditioned conjugate gradient from x = 0. Stops when r^T z drops
// below tolerance^2 or after max_iterations; x is returned in either case.
// Throws NumericalError if p^T A p <= 0.
PcgResult pcg_solve(const SparseSymmetricMatrix& a, std::span<const double> b,
                    const CholeskyFactor& k, const PcgParams& params,
                    const PcgObserver& observer = {});

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace omega
