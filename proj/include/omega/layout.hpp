#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_set>
#include <variant>
#include <vector>

#include "omega/distances.hpp"
#include "omega/graph.hpp"
#include "omega/rdmds.hpp"

namespace omega {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// n x 2 coordinate matrix.
struct Layout2D {
  std::vector<Point> points;

  Layout2D() = default;
  explicit Layout2D(std::size_t n) : points(n) {}
  explicit Layout2D(std::vector<Point> p) : points(std::move(p)) {}

  std::size_t size() const { return points.size(); }
  Point& operator[](std::size_t i) { return points[i]; }
  const Point& operator[](std::size_t i) const { return points[i]; }
};

double distance(const Point& a, const Point& b);

// One stress term. `weight` enters the stress sum; the step weights drive the
// per-endpoint SGD step mu = min(1, step_weight * tau). They equal `weight`
// except for region-weighted pivot terms, where a pivot is not pulled by the
// vertices it represents.
struct NodePair {
  Vertex i = 0;
  Vertex j = 0;
  double delta = 1.0;
  double weight = 1.0;
  double step_weight_i = 1.0;
  double step_weight_j = 1.0;
};

NodePair make_pair(Vertex i, Vertex j, double delta);  // weight = delta^-2

// Node pairs with (i, j) canonicalized to i < j and deduplicated.
class PairSet {
 public:
  // Returns false (and leaves the set unchanged) for self-pairs and duplicates.
  bool insert(NodePair pair);
  bool contains(Vertex i, Vertex j) const;

  std::span<const NodePair> pairs() const { return pairs_; }
  std::span<NodePair> mutable_pairs() { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

 private:
  static std::uint64_t key(Vertex i, Vertex j);
  std::vector<NodePair> pairs_;
  std::unordered_set<std::uint64_t> index_;
};

// Ideal-distance sources.
struct ShortestPathMetric {};
struct ResistanceMetric {
  const SpectralEmbedding* embedding = nullptr;
  double min_distance = 0.01;  // epsilon_d floor
};
using DistanceMetric = std::variant<ShortestPathMetric, ResistanceMetric>;

// sum_p w_p (|Y_i - Y_j| - delta_p)^2.
double stress(const Layout2D& layout, const PairSet& pairs);

// ---------------------------------------------------------------------------
// Pair-set construction

// All edges, then for each vertex h uniform partner draws; self-draws and
// pairs already present are dropped without redrawing. delta is the floored
// embedding distance, weight delta^-2.
PairSet build_pair_set_random(const Graph& g, const SpectralEmbedding& embedding, std::size_t h,
                              double min_distance, std::uint64_t seed);

// Same sampling with ideal distances taken from an arbitrary metric
// (shortest paths are computed per source vertex).
PairSet build_pair_set_random(const Graph& g, const DistanceMetric& metric, std::size_t h,
                              std::uint64_t seed);

struct PivotOptions {
  // w_ip = s_p / delta_ip^2 for pivot terms; plain delta^-2 when false.
  bool region_weights = true;
  // Overrides the seeded choice of the first pivot.
  std::optional<Vertex> first_pivot;
};

struct PivotPairSet {
  PairSet pairs;
  std::vector<Vertex> pivots;
  bool clamped = false;  // requested h exceeded n
};

// Max-min farthest-point pivots: the first is seeded (or forced), each next
// pivot maximizes the distance to its nearest chosen pivot (ties: smallest id).
std::vector<Vertex> select_pivots_maxmin(const Graph& g, const DistanceMetric& metric,
                                         std::size_t count, Vertex first);

// Edges plus (v, p) for every vertex v and pivot p.
PivotPairSet build_pair_set_pivot(const Graph& g, const DistanceMetric& metric, std::size_t h,
                                  std::uint64_t seed, const PivotOptions& options = {});

// Every unordered vertex pair; throws LimitError when n exceeds cap.
PairSet build_pair_set_all(const Graph& g, const DistanceMetric& metric,
                           std::size_t cap = kDefaultAllPairsCap);

// ---------------------------------------------------------------------------
// SGD

struct ScheduleParams {
  std::size_t iterations = 15;
  double epsilon = 0.1;
};

// Geometric step sizes tau_t = tau_1 * exp(-lambda (t-1)) from
// tau_1 = 1/w_min down to tau_T = epsilon/w_max.
class AnnealingSchedule {
 public:
  AnnealingSchedule() = default;
  static AnnealingSchedule geometric(const ScheduleParams& params, double w_min, double w_max);
  // w_min / w_max over the positive step weights of the pair set.
  static AnnealingSchedule for_pairs(const ScheduleParams& params, const PairSet& pairs);

  std::span<const double> steps() const { return steps_; }
  std::size_t size() const { return steps_.size(); }

 private:
  std::vector<double> steps_;
};

// One shuffled pass over the pairs per schedule step. Coincident endpoints
// are separated along a seeded random unit direction.
Layout2D sgd_optimize(Layout2D layout, const PairSet& pairs, const AnnealingSchedule& schedule,
                      std::uint64_t seed);

// Uniform random layout in the unit square.
Layout2D random_layout(std::size_t n, std::uint64_t seed);

// First two embedding columns. Requires dimension >= 2.
Layout2D spectral_layout(const SpectralEmbedding& embedding);

// ---------------------------------------------------------------------------
// Pipelines

struct OmegaParams {
  std::size_t samples_per_vertex = 50;
  double min_distance = 0.01;
  RdmdsParams rdmds{};
  ScheduleParams schedule{};
  std::uint64_t seed = 0;
};

struct OmegaResult {
  Layout2D layout;
  Layout2D initial_layout;
  SpectralEmbedding embedding;
  PairSet pairs;
  double embedding_ms = 0.0;
  double pairs_ms = 0.0;
  double sgd_ms = 0.0;
};

OmegaResult omega_layout(const Graph& g, const OmegaParams& params);

enum class InitMode {
  // Random for shortest paths, spectral for resistance.
  ByMetric,
  Random,
};

// SGD over all n(n-1)/2 pairs.
Layout2D full_sgd_layout(const Graph& g, const DistanceMetric& metric,
                         const ScheduleParams& schedule, std::uint64_t seed,
                         InitMode init = InitMode::ByMetric,
                         std::size_t cap = kDefaultAllPairsCap);

Layout2D initial_layout(const Graph& g, const DistanceMetric& metric, std::uint64_t seed,
                        InitMode init);

struct MajorizationParams {
  double tolerance = 1e-7;  // relative stress decrease
  std::size_t max_iterations = 10000;
  std::size_t sweeps = 1;  // Gauss-Seidel sweeps per iteration
};

struct MajorizationResult {
  Layout2D layout;
  std::vector<double> stress_history;  // initial stress, then after each iteration
  std::size_t iterations = 0;
};

// Localized stress majorization: each vertex moves to the minimizer of the
// majorizing quadratic with the others fixed, so stress never increases.
MajorizationResult stress_majorization(Layout2D layout, const PairSet& pairs,
                                       const MajorizationParams& params = {});

}  // namespace omega
