#include "omega/sparse_matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace omega {

SparseSymmetricMatrix::SparseSymmetricMatrix(std::size_t n,
                                             std::vector<std::size_t> row_offsets,
                                             std::vector<std::size_t> column_indices,
                                             std::vector<double> values)
    : n_(n),
      row_offsets_(std::move(row_offsets)),
      column_indices_(std::move(column_indices)),
      values_(std::move(values)) {
  if (row_offsets_.size() != n_ + 1 || row_offsets_.front() != 0) {
    throw std::invalid_argument("row_offsets must have n+1 entries starting at 0");
  }
  if (row_offsets_.back() != column_indices_.size() ||
      column_indices_.size() != values_.size()) {
    throw std::invalid_argument("nnz mismatch between row_offsets and entries");
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (row_offsets_[i] > row_offsets_[i + 1]) {
      throw std::invalid_argument("row_offsets must be non-decreasing");
    }
    const auto cols = row_columns(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (cols[k] >= n_) throw std::invalid_argument("column index out of range");
      if (k > 0 && cols[k] <= cols[k - 1]) {
        throw std::invalid_argument("column indices must be strictly increasing in row " +
                                    std::to_string(i));
      }
    }
  }
  for (std::size_t i = 0; i < n_; ++i) {
    const auto cols = row_columns(i);
    const auto vals = row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const auto mirror = row_columns(cols[k]);
      const auto it = std::lower_bound(mirror.begin(), mirror.end(), i);
      if (it == mirror.end() || *it != i ||
          row_values(cols[k])[static_cast<std::size_t>(it - mirror.begin())] != vals[k]) {
        throw std::invalid_argument("matrix is not symmetric at (" + std::to_string(i) +
                                    "," + std::to_string(cols[k]) + ")");
      }
    }
  }
}

SparseSymmetricMatrix SparseSymmetricMatrix::from_triplets(std::size_t n,
                                                           std::span<const Triplet> entries) {
  std::vector<Triplet> all;
  all.reserve(2 * entries.size() + n);
  for (std::size_t i = 0; i < n; ++i) all.push_back({i, i, 0.0});
  for (const auto& t : entries) {
    if (t.row >= n || t.col >= n) throw std::invalid_argument("triplet index out of range");
    all.push_back(t);
    if (t.row != t.col) all.push_back({t.col, t.row, t.value});
  }
  std::sort(all.begin(), all.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  std::vector<std::size_t> offsets(n + 1, 0);
  std::vector<std::size_t> cols;
  std::vector<double> vals;
  cols.reserve(all.size());
  vals.reserve(all.size());
  for (std::size_t k = 0; k < all.size(); ++k) {
    if (!cols.empty() && k > 0 && all[k].row == all[k - 1].row && all[k].col == all[k - 1].col) {
      vals.back() += all[k].value;
      continue;
    }
    cols.push_back(all[k].col);
    vals.push_back(all[k].value);
    ++offsets[all[k].row + 1];
  }
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  return SparseSymmetricMatrix(n, std::move(offsets), std::move(cols), std::move(vals));
}

SparseSymmetricMatrix SparseSymmetricMatrix::identity(std::size_t n, double scale) {
  std::vector<std::size_t> offsets(n + 1);
  std::vector<std::size_t> cols(n);
  for (std::size_t i = 0; i <= n; ++i) offsets[i] = i;
  for (std::size_t i = 0; i < n; ++i) cols[i] = i;
  return SparseSymmetricMatrix(n, std::move(offsets), std::move(cols),
                               std::vector<double>(n, scale));
}

double SparseSymmetricMatrix::operator()(std::size_t i, std::size_t j) const {
  const auto cols = row_columns(i);
  const auto it = std::lower_bound(cols.begin(), cols.end(), j);
  if (it == cols.end() || *it != j) return 0.0;
  return row_values(i)[static_cast<std::size_t>(it - cols.begin())];
}

SparseSymmetricMatrix SparseSymmetricMatrix::shifted(double sigma) const {
  SparseSymmetricMatrix out = *this;
  for (std::size_t i = 0; i < n_; ++i) {
    const auto cols = row_columns(i);
    const auto it = std::lower_bound(cols.begin(), cols.end(), i);
    if (it == cols.end() || *it != i) {
      throw std::invalid_argument("shifted() requires stored diagonal entries");
    }
    out.values_[row_offsets_[i] + static_cast<std::size_t>(it - cols.begin())] += sigma;
  }
  return out;
}

SparseSymmetricMatrix SparseSymmetricMatrix::diagonally_scaled(double beta) const {
  SparseSymmetricMatrix out = *this;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      if (column_indices_[k] == i) out.values_[k] += beta * values_[k];
    }
  }
  return out;
}

}  // namespace omega
