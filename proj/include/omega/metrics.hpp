#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "omega/graph.hpp"
#include "omega/layout.hpp"

namespace omega {

// Cluster labels 0..k-1, every cluster non-empty.
struct ClusterAssignment {
  std::vector<std::size_t> labels;
  std::size_t k = 0;

  // Relabels arbitrary ids to 0..k-1 in order of first appearance.
  static ClusterAssignment from_labels(std::span<const std::size_t> raw);
};

// achieved / reference; throws InputError when reference <= 0.
double stress_ratio(double achieved, double reference);

inline constexpr std::size_t kDefaultNeighborhoodK = 10;

// Mean Jaccard overlap between each vertex's k nearest neighbours by
// shortest-path distance and by layout distance (ties: ascending id).
// Requires 1 <= k < n.
double neighborhood_preservation(const Graph& g, const Layout2D& layout,
                                 std::size_t k = kDefaultNeighborhoodK);

// Greedy agglomerative modularity maximization (Clauset-Newman-Moore):
// repeatedly merge the community pair with the largest modularity gain until
// no merge has positive gain. Ties go to the smallest (min id, max id) pair;
// merged communities keep the smaller id.
ClusterAssignment greedy_modularity(const Graph& g);

// Newman modularity of a partition of a weighted graph.
double modularity(const Graph& g, std::span<const std::size_t> labels);

enum class Linkage { Ward, Single, Complete };

// Hierarchical agglomerative clustering on layout coordinates cut at k
// clusters. Ties go to the smallest cluster-id pair.
ClusterAssignment agglomerative_layout_clustering(const Layout2D& layout, std::size_t k,
                                                  Linkage linkage = Linkage::Ward);

// Pair-counting score TP / sqrt((TP+FP)(TP+FN)); 0 when either denominator
// term vanishes. Throws InputError on length mismatch.
double fowlkes_mallows(const ClusterAssignment& a, const ClusterAssignment& b);

// Fowlkes-Mallows between greedy-modularity communities of g and an
// agglomerative clustering of the layout into the same number of clusters.
double clustering_quality(const Graph& g, const Layout2D& layout,
                          Linkage linkage = Linkage::Ward);

struct ReferenceParams {
  std::size_t sgd_iterations = 1000;
  double epsilon = 0.1;
  MajorizationParams majorization{};
  InitMode init = InitMode::ByMetric;
};

struct ReferenceOptimum {
  Layout2D layout;
  double stress = 0.0;  // over all node pairs under the metric
};

// Long FullSGD run followed by stress majorization until convergence.
ReferenceOptimum reference_optimum(const Graph& g, const DistanceMetric& metric,
                                   std::uint64_t seed, const ReferenceParams& params = {});

}  // namespace omega
