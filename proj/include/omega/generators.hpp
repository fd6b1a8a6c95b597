#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "omega/graph.hpp"

namespace omega::generators {

Graph path(std::size_t n);
Graph cycle(std::size_t n);
Graph complete(std::size_t n);
Graph grid(std::size_t rows, std::size_t cols);

// 2^order vertices; vertex v hangs off v with its highest set bit cleared.
Graph binomial_tree(std::size_t order);

// Planted partition: vertex v belongs to cluster v / cluster_size. Each
// intra-cluster pair is an edge with probability p_in, each inter-cluster
// pair with probability p_out. Disconnected draws are discarded and
// resampled from a derived seed; throws LimitError after max_attempts.
Graph random_partition(std::size_t clusters, std::size_t cluster_size, double p_in,
                       double p_out, std::uint64_t seed, std::size_t max_attempts = 100);

// Planted labels matching random_partition's vertex numbering.
std::vector<std::size_t> planted_labels(std::size_t clusters, std::size_t cluster_size);

// Uniform random recursive tree (vertex v attaches to a uniform earlier
// vertex) with weights drawn uniformly from [min_weight, max_weight].
Graph random_tree(std::size_t n, std::uint64_t seed, double min_weight = 1.0,
                  double max_weight = 1.0);

}  // namespace omega::generators
