#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "omega/graph.hpp"

namespace omega {

struct DistanceVector {
  Vertex source = 0;
  std::vector<double> dist;  // +inf for unreachable vertices
};

// Hop counts; edge weights are ignored.
DistanceVector bfs_distances(const Graph& g, Vertex source);

DistanceVector dijkstra_distances(const Graph& g, Vertex source);

// BFS on unit-weight graphs, Dijkstra otherwise.
DistanceVector shortest_path_distances(const Graph& g, Vertex source);

// Dense row-major n x n matrix of doubles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

inline constexpr std::size_t kDefaultAllPairsCap = 5000;
inline constexpr std::size_t kDefaultResistanceOracleCap = 2000;

// Throws LimitError when n exceeds cap.
DenseMatrix all_pairs_shortest_paths(const Graph& g, std::size_t cap = kDefaultAllPairsCap);

// Exact effective resistances r_ij = (e_i - e_j)^T L^+ (e_i - e_j) from a
// dense eigendecomposition of L; eigenvalues below 1e-9 * lambda_max are
// treated as zero. Testing oracle: throws LimitError when n exceeds cap and
// InputError when g is disconnected.
DenseMatrix exact_resistance_matrix(const Graph& g,
                                    std::size_t cap = kDefaultResistanceOracleCap);

}  // namespace omega
