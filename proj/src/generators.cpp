#include "omega/generators.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "omega/error.hpp"
#include "omega/random.hpp"

namespace omega::generators {

namespace {

void require_positive(std::size_t value, const char* name) {
  if (value == 0) throw InputError(std::string(name) + " must be positive");
}

void require_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError(std::string(name) + " must lie in [0, 1]");
}

// Visits every index in [0, count) independently with probability p, using
// geometric skips so sparse draws cost O(hits) rather than O(count).
template <class Visit>
void bernoulli_indices(std::uint64_t count, double p, Rng& rng, Visit&& visit) {
  if (count == 0 || p <= 0.0) return;
  if (p >= 1.0) {
    for (std::uint64_t k = 0; k < count; ++k) visit(k);
    return;
  }
  const double log_q = std::log1p(-p);
  std::uint64_t k = 0;
  for (;;) {
    const double u = 1.0 - rng.uniform();  // (0, 1]
    const double skip = std::floor(std::log(u) / log_q);
    if (skip >= static_cast<double>(count - k)) return;
    k += static_cast<std::uint64_t>(skip);
    visit(k);
    if (++k >= count) return;
  }
}

// Maps a linear index over the strict upper triangle of an m x m block to
// (row, col) with row < col.
std::pair<std::size_t, std::size_t> triangle_pair(std::uint64_t index, std::size_t m) {
  // Row r starts at r*m - r*(r+1)/2.
  const double mm = static_cast<double>(m);
  auto row_start = [m](std::uint64_t r) { return r * m - r * (r + 1) / 2; };
  auto r = static_cast<std::uint64_t>(
      std::floor((2.0 * mm - 1.0 - std::sqrt((2.0 * mm - 1.0) * (2.0 * mm - 1.0) -
                                             8.0 * static_cast<double>(index))) / 2.0));
  while (r > 0 && row_start(r) > index) --r;
  while (row_start(r + 1) <= index) ++r;
  const std::uint64_t c = index - row_start(r) + r + 1;
  return {static_cast<std::size_t>(r), static_cast<std::size_t>(c)};
}

}  // namespace

Graph path(std::size_t n) {
  require_positive(n, "path length");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return Graph(n, edges);
}

Graph cycle(std::size_t n) {
  if (n < 3) throw InputError("cycle requires n >= 3");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
  return Graph(n, edges);
}

Graph complete(std::size_t n) {
  require_positive(n, "complete graph size");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
  return Graph(n, edges);
}

Graph grid(std::size_t rows, std::size_t cols) {
  require_positive(rows, "grid rows");
  require_positive(cols, "grid cols");
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t v = r * cols + c;
      if (c + 1 < cols) edges.push_back({v, v + 1, 1.0});
      if (r + 1 < rows) edges.push_back({v, v + cols, 1.0});
    }
  }
  return Graph(rows * cols, edges);
}

Graph binomial_tree(std::size_t order) {
  if (order > 30) throw InputError("binomial tree order too large");
  const std::size_t n = std::size_t{1} << order;
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (std::size_t v = 1; v < n; ++v) {
    edges.push_back({v - std::bit_floor(v), v, 1.0});
  }
  return Graph(n, edges);
}

Graph random_partition(std::size_t clusters, std::size_t cluster_size, double p_in, double p_out,
                       std::uint64_t seed, std::size_t max_attempts) {
  require_positive(clusters, "cluster count");
  require_positive(cluster_size, "cluster size");
  require_probability(p_in, "p_in");
  require_probability(p_out, "p_out");
  const std::size_t n = clusters * cluster_size;
  const std::uint64_t within = static_cast<std::uint64_t>(cluster_size) * (cluster_size - 1) / 2;
  const std::uint64_t between = static_cast<std::uint64_t>(cluster_size) * cluster_size;

  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    Rng rng(derive_seed(seed, attempt));
    std::vector<Edge> edges;
    for (std::size_t a = 0; a < clusters; ++a) {
      const std::size_t base_a = a * cluster_size;
      bernoulli_indices(within, p_in, rng, [&](std::uint64_t k) {
        const auto [r, c] = triangle_pair(k, cluster_size);
        edges.push_back({base_a + r, base_a + c, 1.0});
      });
      for (std::size_t b = a + 1; b < clusters; ++b) {
        const std::size_t base_b = b * cluster_size;
        bernoulli_indices(between, p_out, rng, [&](std::uint64_t k) {
          edges.push_back({base_a + static_cast<std::size_t>(k / cluster_size),
                           base_b + static_cast<std::size_t>(k % cluster_size), 1.0});
        });
      }
    }
    Graph g(n, edges);
    if (g.is_connected()) return g;
  }
  throw LimitError("random_partition: no connected sample after " + std::to_string(max_attempts) +
                   " attempts");
}

std::vector<std::size_t> planted_labels(std::size_t clusters, std::size_t cluster_size) {
  std::vector<std::size_t> labels(clusters * cluster_size);
  for (std::size_t v = 0; v < labels.size(); ++v) labels[v] = v / cluster_size;
  return labels;
}

Graph random_tree(std::size_t n, std::uint64_t seed, double min_weight, double max_weight) {
  require_positive(n, "tree size");
  if (!(min_weight > 0.0) || max_weight < min_weight) {
    throw InputError("random_tree: weights must satisfy 0 < min <= max");
  }
  Rng rng(seed);
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (std::size_t v = 1; v < n; ++v) {
    const std::size_t parent = rng.index(v);
    edges.push_back({parent, v, rng.uniform(min_weight, max_weight)});
  }
  return Graph(n, edges);
}

}  // namespace omega::generators
