#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "omega/sparse_matrix.hpp"

namespace omega {

using Vertex = std::size_t;

inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

struct Edge {
  Vertex u;
  Vertex v;
  double weight = 1.0;
};

// Input record for from_edge_list; ids are arbitrary integers.
struct RawEdge {
  std::int64_t u;
  std::int64_t v;
  std::optional<double> weight;
};

struct Neighbor {
  Vertex vertex;
  double weight;
};

// Undirected weighted graph over vertices 0..n-1. Immutable once built.
//
// Construction normalizes the edge list: self-loops are dropped, parallel
// edges are merged by summing their weights, every edge is stored once with
// u < v, and edges are sorted by (u, v). Weights are conductances.
class Graph {
 public:
  Graph() = default;

  // Throws InputError on out-of-range endpoints or non-positive / non-finite
  // weights; the message names the offending edge index.
  Graph(std::size_t n, std::span<const Edge> edges);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }

  std::span<const Edge> edges() const { return edges_; }

  std::span<const Neighbor> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  double weighted_degree(Vertex v) const { return weighted_degree_[v]; }
  double max_weighted_degree() const;

  bool has_unit_weights() const { return unit_weights_; }
  bool is_connected() const;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
  std::vector<double> weighted_degree_;
  bool unit_weights_ = true;
};

// Builds a graph from arbitrary integer ids. Vertex ids are compacted to
// 0..n-1 in order of first appearance; missing weights default to 1.
// Rejects an empty list and non-positive weights (reporting the 1-based
// position of the offending record).
Graph from_edge_list(std::span<const RawEdge> edges);

struct ComponentExtraction {
  Graph graph;
  std::vector<Vertex> new_to_old;
  std::vector<Vertex> old_to_new;  // kNoVertex for dropped vertices
};

// Component with the most vertices; ties go to the component holding the
// smallest original vertex id. New ids follow ascending original ids.
ComponentExtraction largest_connected_component(const Graph& g);

// Connected component label per vertex, labels numbered by smallest member.
std::vector<std::size_t> connected_components(const Graph& g);

// L = D - A with weighted adjacency. Every diagonal entry is stored.
SparseSymmetricMatrix laplacian(const Graph& g);

}  // namespace omega
