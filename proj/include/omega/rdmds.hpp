#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "omega/graph.hpp"
#include "omega/sparse.hpp"

namespace omega {

struct RdmdsParams {
  std::size_t dimension = 10;
  double shift = 1e-6;
  double eig_tolerance = 1e-5;
  std::size_t max_eig_iterations = 100;
  PcgParams pcg{0.1, 100};
  std::uint64_t seed = 0;
};

// Per-run solver diagnostics.
struct RdmdsStats {
  std::vector<std::size_t> power_iterations;  // per eigenvector
  std::vector<bool> converged;                // per eigenvector
  std::size_t cg_iterations = 0;              // summed over all PCG solves
  double ic_diagonal_shift = 0.0;             // IC(0) breakdown fallback, 0 if unused
};

// Low-rank resistance-distance embedding. Column k of the coordinate matrix
// is eigenvector k scaled by 1/sqrt(lambda_k); eigenvalues ascend and the
// constant eigenvector is excluded.
class SpectralEmbedding {
 public:
  SpectralEmbedding() = default;
  SpectralEmbedding(std::vector<double> eigenvalues,
                    std::vector<std::vector<double>> eigenvectors, RdmdsStats stats = {});

  std::size_t num_vertices() const { return n_; }
  std::size_t dimension() const { return eigenvalues_.size(); }

  std::span<const double> eigenvalues() const { return eigenvalues_; }
  std::span<const double> eigenvector(std::size_t k) const { return eigenvectors_[k]; }

  // Row i of the coordinate matrix.
  std::span<const double> coordinates(Vertex i) const {
    return {coordinates_.data() + i * dimension(), dimension()};
  }
  double coordinate(Vertex i, std::size_t k) const { return coordinates_[i * dimension() + k]; }

  const RdmdsStats& stats() const { return stats_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> eigenvalues_;
  std::vector<std::vector<double>> eigenvectors_;
  std::vector<double> coordinates_;  // row-major n x d
  RdmdsStats stats_;
};

// Computes the `dimension` smallest non-zero Laplacian eigenpairs of a
// connected graph by inverse power iteration on L + shift*I with PCG solves
// and Gram-Schmidt deflation (seeded with the constant vector).
// Throws InputError when dimension is 0 or exceeds n-1.
SpectralEmbedding compute_embedding(const Graph& g, const RdmdsParams& params);

// Euclidean distance between embedding rows i and j.
double embedding_distance(const SpectralEmbedding& e, Vertex i, Vertex j);

// sum_k (u_k[i] - u_k[j])^2 / lambda_k, evaluated from the eigenvectors.
double low_rank_resistance(const SpectralEmbedding& e, Vertex i, Vertex j);

// CSV dump: a "# lambda: ..." comment line, then one row of d coordinates
// per vertex in shortest round-trip decimal form.
void write_embedding_csv(std::ostream& out, const SpectralEmbedding& e);

}  // namespace omega
