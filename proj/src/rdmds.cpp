#include "omega/rdmds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include "omega/error.hpp"
#include "omega/format.hpp"
#include "omega/random.hpp"

namespace omega {

SpectralEmbedding::SpectralEmbedding(std::vector<double> eigenvalues,
                                     std::vector<std::vector<double>> eigenvectors,
                                     RdmdsStats stats)
    : eigenvalues_(std::move(eigenvalues)),
      eigenvectors_(std::move(eigenvectors)),
      stats_(std::move(stats)) {
  if (eigenvalues_.size() != eigenvectors_.size()) {
    throw std::invalid_argument("SpectralEmbedding: eigenvalue/eigenvector count mismatch");
  }
  n_ = eigenvectors_.empty() ? 0 : eigenvectors_.front().size();
  const std::size_t d = eigenvalues_.size();
  coordinates_.assign(n_ * d, 0.0);
  for (std::size_t k = 0; k < d; ++k) {
    if (eigenvectors_[k].size() != n_) {
      throw std::invalid_argument("SpectralEmbedding: eigenvector length mismatch");
    }
    if (!(eigenvalues_[k] > 0.0)) {
      throw NumericalError("SpectralEmbedding: non-positive eigenvalue " +
                           std::to_string(eigenvalues_[k]));
    }
    const double scale = 1.0 / std::sqrt(eigenvalues_[k]);
    for (std::size_t i = 0; i < n_; ++i) coordinates_[i * d + k] = eigenvectors_[k][i] * scale;
  }
}

namespace {

// v <- v - (v . b) b for each basis vector in order (modified Gram-Schmidt).
void deflate(std::vector<double>& v, std::span<const std::vector<double>> basis) {
  for (const auto& b : basis) {
    const double c = dot(v, b);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
  }
}

bool normalize(std::vector<double>& v) {
  const double norm = norm2(v);
  if (!(norm > 0.0) || !std::isfinite(norm)) return false;
  for (double& x : v) x /= norm;
  return true;
}

}  // namespace

SpectralEmbedding compute_embedding(const Graph& g, const RdmdsParams& params) {
  const std::size_t n = g.num_vertices();
  const std::size_t d = params.dimension;
  if (d == 0) throw InputError("rdmds: dimension must be positive");
  if (n < 2 || d > n - 1) {
    throw InputError("rdmds: dimension " + std::to_string(d) + " exceeds n-1 = " +
                     std::to_string(n == 0 ? 0 : n - 1));
  }
  if (!(params.shift > 0.0)) throw InputError("rdmds: shift must be positive");
  if (!(params.eig_tolerance > 0.0) || params.max_eig_iterations == 0) {
    throw InputError("rdmds: eigenvalue tolerance and iteration cap must be positive");
  }
  if (!g.is_connected()) throw InputError("rdmds: graph must be connected");

  const SparseSymmetricMatrix lap = laplacian(g);
  const SparseSymmetricMatrix shifted = lap.shifted(params.shift);
  const CholeskyFactor factor = incomplete_cholesky(shifted);

  RdmdsStats stats;
  stats.ic_diagonal_shift = factor.diagonal_shift();

  // basis[0] is the normalized constant vector; eigenvectors follow.
  std::vector<std::vector<double>> basis;
  basis.reserve(d + 1);
  basis.emplace_back(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> eigenvalues;
  eigenvalues.reserve(d);

  Rng rng(params.seed);
  std::vector<double> lv(n);
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform(-1.0, 1.0);
    deflate(v, basis);
    if (!normalize(v)) throw InputError("rdmds: deflation exhausted the vector space");

    matvec(lap, v, lv);
    double rayleigh = dot(v, lv);
    std::size_t iterations = 0;
    bool converged = false;
    while (iterations < params.max_eig_iterations) {
      ++iterations;
      PcgResult solve = pcg_solve(shifted, v, factor, params.pcg);
      stats.cg_iterations += solve.iterations;
      v = std::move(solve.x);
      deflate(v, basis);
      if (!normalize(v)) {
        throw NumericalError("rdmds: iterate vanished after deflation (eigenvector " +
                             std::to_string(k + 2) + ")");
      }
      matvec(lap, v, lv);
      const double next = dot(v, lv);
      const double change = std::abs(next - rayleigh);
      rayleigh = next;
      if (change < params.eig_tolerance) {
        converged = true;
        break;
      }
    }
    if (!(rayleigh > 0.0)) {
      throw NumericalError("rdmds: non-positive Rayleigh quotient for eigenvector " +
                           std::to_string(k + 2));
    }
    stats.power_iterations.push_back(iterations);
    stats.converged.push_back(converged);
    eigenvalues.push_back(rayleigh);
    basis.push_back(std::move(v));
  }

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return eigenvalues[a] < eigenvalues[b]; });
  std::vector<double> sorted_values(d);
  std::vector<std::vector<double>> sorted_vectors(d);
  RdmdsStats sorted_stats = stats;
  for (std::size_t k = 0; k < d; ++k) {
    sorted_values[k] = eigenvalues[order[k]];
    sorted_vectors[k] = std::move(basis[order[k] + 1]);
    sorted_stats.power_iterations[k] = stats.power_iterations[order[k]];
    sorted_stats.converged[k] = stats.converged[order[k]];
  }
  return SpectralEmbedding(std::move(sorted_values), std::move(sorted_vectors),
                           std::move(sorted_stats));
}

double embedding_distance(const SpectralEmbedding& e, Vertex i, Vertex j) {
  const auto a = e.coordinates(i);
  const auto b = e.coordinates(j);
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = a[k] - b[k];
    s += diff * diff;
  }
  return std::sqrt(s);
}

double low_rank_resistance(const SpectralEmbedding& e, Vertex i, Vertex j) {
  double s = 0.0;
  for (std::size_t k = 0; k < e.dimension(); ++k) {
    const auto u = e.eigenvector(k);
    const double diff = u[i] - u[j];
    s += diff * diff / e.eigenvalues()[k];
  }
  return s;
}

void write_embedding_csv(std::ostream& out, const SpectralEmbedding& e) {
  out << "# lambda: ";
  for (std::size_t k = 0; k < e.dimension(); ++k) {
    if (k) out << ',';
    out << format_double(e.eigenvalues()[k]);
  }
  out << '\n';
  for (Vertex i = 0; i < e.num_vertices(); ++i) {
    const auto row = e.coordinates(i);
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out << ',';
      out << format_double(row[k]);
    }
    out << '\n';
  }
}

}  // namespace omega
