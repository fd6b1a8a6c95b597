#include "omega/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <unordered_map>

#include "omega/error.hpp"

namespace omega {

Graph::Graph(std::size_t n, std::span<const Edge> edges) : n_(n) {
  std::vector<Edge> canonical;
  canonical.reserve(edges.size());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const Edge& e = edges[k];
    if (e.u >= n || e.v >= n) {
      throw InputError("edge " + std::to_string(k + 1) + ": endpoint out of range for n=" +
                       std::to_string(n));
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw InputError("edge " + std::to_string(k + 1) + ": weight must be positive and finite, got " +
                       std::to_string(e.weight));
    }
    if (e.u == e.v) continue;
    canonical.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.weight});
  }
  // Stable sort keeps the summation order of parallel edges deterministic.
  std::stable_sort(canonical.begin(), canonical.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (const Edge& e : canonical) {
    if (!edges_.empty() && edges_.back().u == e.u && edges_.back().v == e.v) {
      edges_.back().weight += e.weight;
    } else {
      edges_.push_back(e);
    }
  }

  std::vector<std::size_t> counts(n_ + 1, 0);
  for (const Edge& e : edges_) {
    ++counts[e.u + 1];
    ++counts[e.v + 1];
    if (e.weight != 1.0) unit_weights_ = false;
  }
  offsets_.assign(n_ + 1, 0);
  for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] = offsets_[i] + counts[i + 1];
  adjacency_.resize(offsets_[n_]);
  weighted_degree_.assign(n_, 0.0);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adjacency_[cursor[e.u]++] = {e.v, e.weight};
    adjacency_[cursor[e.v]++] = {e.u, e.weight};
    weighted_degree_[e.u] += e.weight;
    weighted_degree_[e.v] += e.weight;
  }
  for (std::size_t v = 0; v < n_; ++v) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]),
              [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
  }
}

double Graph::max_weighted_degree() const {
  double best = 0.0;
  for (double d : weighted_degree_) best = std::max(best, d);
  return best;
}

bool Graph::is_connected() const {
  if (n_ == 0) return false;
  const auto labels = connected_components(*this);
  return std::all_of(labels.begin(), labels.end(), [](std::size_t c) { return c == 0; });
}

Graph from_edge_list(std::span<const RawEdge> edges) {
  if (edges.empty()) throw InputError("edge list is empty");
  std::unordered_map<std::int64_t, Vertex> ids;
  std::vector<Edge> compact;
  compact.reserve(edges.size());
  auto id_of = [&ids](std::int64_t label) {
    const auto [it, inserted] = ids.try_emplace(label, ids.size());
    return it->second;
  };
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const double w = edges[k].weight.value_or(1.0);
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw InputError("line " + std::to_string(k + 1) + ": non-positive weight " +
                       std::to_string(w) + " on edge (" + std::to_string(edges[k].u) + ", " +
                       std::to_string(edges[k].v) + ")");
    }
    const Vertex u = id_of(edges[k].u);
    const Vertex v = id_of(edges[k].v);
    compact.push_back({u, v, w});
  }
  return Graph(ids.size(), compact);
}

std::vector<std::size_t> connected_components(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::size_t> label(n, kNoVertex);
  std::size_t next = 0;
  std::queue<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    if (label[s] != kNoVertex) continue;
    label[s] = next;
    queue.push(s);
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop();
      for (const Neighbor& nb : g.neighbors(v)) {
        if (label[nb.vertex] == kNoVertex) {
          label[nb.vertex] = next;
          queue.push(nb.vertex);
        }
      }
    }
    ++next;
  }
  return label;
}

ComponentExtraction largest_connected_component(const Graph& g) {
  const std::size_t n = g.num_vertices();
  ComponentExtraction out;
  out.old_to_new.assign(n, kNoVertex);
  if (n == 0) return out;

  const auto label = connected_components(g);
  std::vector<std::size_t> sizes;
  for (std::size_t c : label) {
    if (c >= sizes.size()) sizes.resize(c + 1, 0);
    ++sizes[c];
  }
  // Labels are numbered by smallest member, so the first maximum wins ties.
  const std::size_t best = static_cast<std::size_t>(
      std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

  for (Vertex v = 0; v < n; ++v) {
    if (label[v] == best) {
      out.old_to_new[v] = out.new_to_old.size();
      out.new_to_old.push_back(v);
    }
  }
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (label[e.u] == best) kept.push_back({out.old_to_new[e.u], out.old_to_new[e.v], e.weight});
  }
  out.graph = Graph(out.new_to_old.size(), kept);
  return out;
}

SparseSymmetricMatrix laplacian(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::size_t> offsets(n + 1, 0);
  std::vector<std::size_t> cols;
  std::vector<double> vals;
  cols.reserve(n + 2 * g.num_edges());
  vals.reserve(n + 2 * g.num_edges());
  for (Vertex v = 0; v < n; ++v) {
    bool diagonal_done = false;
    for (const Neighbor& nb : g.neighbors(v)) {
      if (!diagonal_done && nb.vertex > v) {
        cols.push_back(v);
        vals.push_back(g.weighted_degree(v));
        diagonal_done = true;
      }
      cols.push_back(nb.vertex);
      vals.push_back(-nb.weight);
    }
    if (!diagonal_done) {
      cols.push_back(v);
      vals.push_back(g.weighted_degree(v));
    }
    offsets[v + 1] = cols.size();
  }
  return SparseSymmetricMatrix(n, std::move(offsets), std::move(cols), std::move(vals));
}

}  // namespace omega
