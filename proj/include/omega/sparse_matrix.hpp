#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace omega {

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

// Symmetric matrix in compressed sparse row form. Both triangles are stored,
// column indices within each row are strictly increasing.
class SparseSymmetricMatrix {
 public:
  SparseSymmetricMatrix() = default;

  // Validates the CSR buffers: sorted unique columns per row, structural and
  // numerical symmetry, nnz == row_offsets[n]. Throws std::invalid_argument.
  SparseSymmetricMatrix(std::size_t n, std::vector<std::size_t> row_offsets,
                        std::vector<std::size_t> column_indices,
                        std::vector<double> values);

  // Each off-diagonal entry is given once (either triangle) and mirrored;
  // duplicates are summed. Diagonal entries are always materialized, with
  // value 0 when absent.
  static SparseSymmetricMatrix from_triplets(std::size_t n,
                                             std::span<const Triplet> entries);

  static SparseSymmetricMatrix identity(std::size_t n, double scale = 1.0);

  std::size_t dimension() const { return n_; }
  std::size_t nnz() const { return values_.size(); }

  std::span<const std::size_t> row_offsets() const { return row_offsets_; }
  std::span<const std::size_t> column_indices() const { return column_indices_; }
  std::span<const double> values() const { return values_; }

  std::span<const std::size_t> row_columns(std::size_t i) const {
    return {column_indices_.data() + row_offsets_[i],
            row_offsets_[i + 1] - row_offsets_[i]};
  }
  std::span<const double> row_values(std::size_t i) const {
    return {values_.data() + row_offsets_[i], row_offsets_[i + 1] - row_offsets_[i]};
  }

  // Entry lookup, zero when structurally absent.
  double operator()(std::size_t i, std::size_t j) const;
  double diagonal(std::size_t i) const { return (*this)(i, i); }

  // A + sigma * I. Requires every diagonal entry to be stored.
  SparseSymmetricMatrix shifted(double sigma) const;

  // A + beta * diag(A).
  SparseSymmetricMatrix diagonally_scaled(double beta) const;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> row_offsets_{0};
  std::vector<std::size_t> column_indices_;
  std::vector<double> values_;
};

}  // namespace omega
