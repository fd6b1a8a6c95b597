#include "omega/distances.hpp"

#include <Eigen/Dense>
#include <limits>
#include <queue>
#include <string>

#include "omega/error.hpp"

namespace omega {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

void check_source(const Graph& g, Vertex source) {
  if (source >= g.num_vertices()) throw InputError("source vertex out of range");
}

}  // namespace

DistanceVector bfs_distances(const Graph& g, Vertex source) {
  check_source(g, source);
  DistanceVector out{source, std::vector<double>(g.num_vertices(), kInfinity)};
  std::queue<Vertex> queue;
  out.dist[source] = 0.0;
  queue.push(source);
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop();
    for (const Neighbor& nb : g.neighbors(v)) {
      if (out.dist[nb.vertex] == kInfinity) {
        out.dist[nb.vertex] = out.dist[v] + 1.0;
        queue.push(nb.vertex);
      }
    }
  }
  return out;
}

DistanceVector dijkstra_distances(const Graph& g, Vertex source) {
  check_source(g, source);
  DistanceVector out{source, std::vector<double>(g.num_vertices(), kInfinity)};
  using Entry = std::pair<double, Vertex>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  out.dist[source] = 0.0;
  heap.push({0.0, source});
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (d > out.dist[v]) continue;
    for (const Neighbor& nb : g.neighbors(v)) {
      const double candidate = d + nb.weight;
      if (candidate < out.dist[nb.vertex]) {
        out.dist[nb.vertex] = candidate;
        heap.push({candidate, nb.vertex});
      }
    }
  }
  return out;
}

DistanceVector shortest_path_distances(const Graph& g, Vertex source) {
  return g.has_unit_weights() ? bfs_distances(g, source) : dijkstra_distances(g, source);
}

DenseMatrix all_pairs_shortest_paths(const Graph& g, std::size_t cap) {
  const std::size_t n = g.num_vertices();
  if (n > cap) {
    throw LimitError("all-pairs shortest paths: n = " + std::to_string(n) + " exceeds cap " +
                     std::to_string(cap));
  }
  DenseMatrix out(n);
  for (Vertex s = 0; s < n; ++s) {
    const auto row = shortest_path_distances(g, s);
    for (Vertex t = 0; t < n; ++t) out(s, t) = row.dist[t];
  }
  return out;
}

DenseMatrix exact_resistance_matrix(const Graph& g, std::size_t cap) {
  const std::size_t n = g.num_vertices();
  if (n > cap) {
    throw LimitError("exact resistance oracle: n = " + std::to_string(n) + " exceeds cap " +
                     std::to_string(cap));
  }
  if (!g.is_connected()) throw InputError("exact resistance oracle: graph must be connected");

  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                              static_cast<Eigen::Index>(n));
  for (const Edge& e : g.edges()) {
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    lap(u, v) -= e.weight;
    lap(v, u) -= e.weight;
    lap(u, u) += e.weight;
    lap(v, v) += e.weight;
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("exact resistance oracle: eigendecomposition failed");
  }
  const Eigen::VectorXd& lambda = solver.eigenvalues();
  const double cutoff = 1e-9 * lambda.cwiseAbs().maxCoeff();
  Eigen::VectorXd inverse = Eigen::VectorXd::Zero(lambda.size());
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    if (lambda(k) > cutoff) inverse(k) = 1.0 / lambda(k);
  }
  const Eigen::MatrixXd& u = solver.eigenvectors();
  const Eigen::MatrixXd pinv = u * inverse.asDiagonal() * u.transpose();

  DenseMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto a = static_cast<Eigen::Index>(i);
      const auto b = static_cast<Eigen::Index>(j);
      const double r = pinv(a, a) + pinv(b, b) - 2.0 * pinv(a, b);
      out(i, j) = r;
      out(j, i) = r;
    }
  }
  return out;
}

}  // namespace omega
