#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "omega/graph.hpp"
#include "omega/layout.hpp"
#include "omega/metrics.hpp"
#include "omega/rdmds.hpp"

namespace omega::bench {

struct CorpusGraph {
  std::string name;
  Graph graph;
};

// Connected graphs with 100 <= n <= 500: grids, binomial trees, random
// trees, planted partitions, cycles and sparse random graphs.
std::vector<CorpusGraph> desk_corpus(std::uint64_t seed);

// Planted partitions with 15 clusters of 20..38 vertices each.
std::vector<CorpusGraph> planted_corpus(std::uint64_t seed, std::size_t count = 10);

// Random graphs with average degree ~20 and roughly `edges` edges.
CorpusGraph scaling_graph(std::size_t edges, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Sampling strategies

enum class Strategy { Random, Pivot };
enum class MetricKind { Resistance, ShortestPath };

const char* to_string(Strategy s);
const char* to_string(MetricKind m);

struct SamplingConfig {
  std::vector<std::size_t> h_values{50};
  std::size_t seeds = 10;
  std::uint64_t seed = 0;
  double min_distance = 0.01;
  RdmdsParams rdmds{};
  ScheduleParams schedule{};
  ReferenceParams reference{};
};

struct SamplingRecord {
  std::string graph;
  std::size_t n = 0;
  Strategy strategy = Strategy::Random;
  MetricKind metric = MetricKind::Resistance;
  std::size_t h = 0;
  std::uint64_t seed = 0;
  double stress = 0.0;
  double reference_stress = 0.0;
  double ratio = 0.0;
};

// Sparse SGD layouts with both strategies under both metrics; the stress of
// each is measured over all pairs and divided by a per-graph reference
// optimum. The embedding is computed once per graph.
std::vector<SamplingRecord> run_sampling_suite(const std::vector<CorpusGraph>& corpus,
                                               const SamplingConfig& config);

// ---------------------------------------------------------------------------
// Faithfulness

struct FaithfulnessConfig {
  std::uint64_t seed = 0;
  std::size_t dimension = 10;
  double min_distance = 0.01;
  RdmdsParams rdmds{};
  ScheduleParams schedule{};
  Linkage linkage = Linkage::Ward;
};

struct FaithfulnessRecord {
  std::string graph;
  std::size_t n = 0;
  std::size_t communities = 0;
  double quality_resistance = 0.0;
  double quality_shortest_path = 0.0;
  double improvement = 0.0;  // resistance / shortest path
};

// FullSGD layouts under both metrics compared by clustering quality.
std::vector<FaithfulnessRecord> run_faithfulness_suite(const std::vector<CorpusGraph>& corpus,
                                                       const FaithfulnessConfig& config);

// ---------------------------------------------------------------------------
// Runtime

struct RuntimeConfig {
  std::uint64_t seed = 0;
  std::size_t repeats = 3;
  std::size_t samples_per_vertex = 50;
  RdmdsParams rdmds{};
  ScheduleParams schedule{};
};

struct RuntimeRecord {
  std::string graph;
  std::size_t n = 0;
  std::size_t m = 0;
  std::string algorithm;       // "omega" or "sparse-pivot"
  double preprocessing_ms = 0;  // distances and pair list, median
  double sgd_ms = 0;            // median
  double total_ms = 0;          // median of per-repeat totals
};

std::vector<RuntimeRecord> run_runtime_suite(const std::vector<CorpusGraph>& corpus,
                                             const RuntimeConfig& config);

double median(std::vector<double> values);

}  // namespace omega::bench
