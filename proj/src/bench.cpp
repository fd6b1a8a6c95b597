#include "omega/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "omega/error.hpp"
#include "omega/generators.hpp"
#include "omega/random.hpp"

namespace omega::bench {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::string join_name(const std::string& kind, std::initializer_list<std::size_t> args) {
  std::string out = kind;
  char sep = ':';
  for (std::size_t a : args) {
    out += sep;
    out += std::to_string(a);
    sep = ',';
  }
  return out;
}

}  // namespace

double median(std::vector<double> values) {
  if (values.empty()) throw InputError("median of an empty sample");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

const char* to_string(Strategy s) { return s == Strategy::Random ? "random" : "pivot"; }
const char* to_string(MetricKind m) {
  return m == MetricKind::Resistance ? "resistance" : "shortest-path";
}

std::vector<CorpusGraph> desk_corpus(std::uint64_t seed) {
  namespace gen = generators;
  std::vector<CorpusGraph> out;
  auto add = [&](std::string name, Graph g) { out.push_back({std::move(name), std::move(g)}); };

  add("grid:10,10", gen::grid(10, 10));
  add("grid:12,20", gen::grid(12, 20));
  add("grid:20,20", gen::grid(20, 20));
  add("grid:5,60", gen::grid(5, 60));
  add("binomial_tree:7", gen::binomial_tree(7));
  add("binomial_tree:8", gen::binomial_tree(8));
  add("cycle:150", gen::cycle(150));
  add("cycle:400", gen::cycle(400));
  add("path:120", gen::path(120));

  std::uint64_t stream = 0;
  for (std::size_t n : {150, 250, 350, 450}) {
    const std::uint64_t s = derive_seed(seed, stream++);
    add(join_name("random_tree", {n}) + "#" + std::to_string(s), gen::random_tree(n, s));
  }
  struct Partition {
    std::size_t clusters, size;
    double p_in, p_out;
  };
  for (const Partition& p : {Partition{4, 40, 0.3, 0.01}, Partition{5, 60, 0.2, 0.005},
                             Partition{8, 50, 0.15, 0.004}, Partition{10, 30, 0.4, 0.01}}) {
    const std::uint64_t s = derive_seed(seed, stream++);
    add(join_name("random_partition", {p.clusters, p.size}) + "#" + std::to_string(s),
        gen::random_partition(p.clusters, p.size, p.p_in, p.p_out, s));
  }
  // Sparse Erdos-Renyi graphs, average degree about 8.
  for (std::size_t n : {120, 200, 300, 480}) {
    const std::uint64_t s = derive_seed(seed, stream++);
    add(join_name("gnp", {n}) + "#" + std::to_string(s),
        gen::random_partition(1, n, 8.0 / static_cast<double>(n - 1), 0.0, s));
  }
  return out;
}

std::vector<CorpusGraph> planted_corpus(std::uint64_t seed, std::size_t count) {
  std::vector<CorpusGraph> out;
  constexpr std::size_t kClusters = 15;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t size = 20 + 2 * (i % 10);
    const double p_in = 0.3;
    // About one inter-cluster neighbour per vertex.
    const double p_out = 1.0 / static_cast<double>((kClusters - 1) * size);
    const std::uint64_t s = derive_seed(seed, 100 + i);
    out.push_back({join_name("random_partition", {kClusters, size}) + "#" + std::to_string(s),
                   generators::random_partition(kClusters, size, p_in, p_out, s)});
  }
  return out;
}

CorpusGraph scaling_graph(std::size_t edges, std::uint64_t seed) {
  const std::size_t n = std::max<std::size_t>(edges / 10, 22);
  const double p = std::min(1.0, 20.0 / static_cast<double>(n - 1));
  return {join_name("gnp", {n}) + "#" + std::to_string(seed),
          generators::random_partition(1, n, p, 0.0, seed)};
}

std::vector<SamplingRecord> run_sampling_suite(const std::vector<CorpusGraph>& corpus,
                                               const SamplingConfig& config) {
  std::vector<SamplingRecord> out;
  for (std::size_t gi = 0; gi < corpus.size(); ++gi) {
    const Graph& g = corpus[gi].graph;
    const std::uint64_t graph_seed = derive_seed(config.seed, gi);
    RdmdsParams rdmds = config.rdmds;
    rdmds.seed = derive_seed(graph_seed, 1);
    const SpectralEmbedding embedding = compute_embedding(g, rdmds);

    for (MetricKind kind : {MetricKind::Resistance, MetricKind::ShortestPath}) {
      const DistanceMetric metric = kind == MetricKind::Resistance
                                        ? DistanceMetric{ResistanceMetric{&embedding, config.min_distance}}
                                        : DistanceMetric{ShortestPathMetric{}};
      const PairSet all = build_pair_set_all(g, metric);
      const double reference =
          reference_optimum(g, metric, derive_seed(graph_seed, 2), config.reference).stress;

      for (std::size_t h : config.h_values) {
        for (std::size_t s = 0; s < config.seeds; ++s) {
          const std::uint64_t run_seed = derive_seed(config.seed, 1000 + s);
          const Layout2D start = initial_layout(g, metric, run_seed, InitMode::ByMetric);
          for (Strategy strategy : {Strategy::Random, Strategy::Pivot}) {
            const PairSet pairs = strategy == Strategy::Random
                                      ? build_pair_set_random(g, metric, h, run_seed)
                                      : build_pair_set_pivot(g, metric, h, run_seed).pairs;
            Layout2D layout = start;
            if (config.schedule.iterations > 0) {
              layout = sgd_optimize(std::move(layout), pairs,
                                    AnnealingSchedule::for_pairs(config.schedule, pairs),
                                    derive_seed(run_seed, 3));
            }
            SamplingRecord rec;
            rec.graph = corpus[gi].name;
            rec.n = g.num_vertices();
            rec.strategy = strategy;
            rec.metric = kind;
            rec.h = h;
            rec.seed = run_seed;
            rec.stress = stress(layout, all);
            rec.reference_stress = reference;
            rec.ratio = stress_ratio(rec.stress, reference);
            out.push_back(std::move(rec));
          }
        }
      }
    }
  }
  return out;
}

std::vector<FaithfulnessRecord> run_faithfulness_suite(const std::vector<CorpusGraph>& corpus,
                                                       const FaithfulnessConfig& config) {
  std::vector<FaithfulnessRecord> out;
  for (std::size_t gi = 0; gi < corpus.size(); ++gi) {
    const Graph& g = corpus[gi].graph;
    const std::uint64_t graph_seed = derive_seed(config.seed, gi);
    RdmdsParams rdmds = config.rdmds;
    rdmds.dimension = config.dimension;
    rdmds.seed = derive_seed(graph_seed, 1);
    const SpectralEmbedding embedding = compute_embedding(g, rdmds);

    const ClusterAssignment truth = greedy_modularity(g);
    auto quality = [&](const DistanceMetric& metric) {
      const Layout2D layout = full_sgd_layout(g, metric, config.schedule, derive_seed(graph_seed, 2));
      const ClusterAssignment found =
          agglomerative_layout_clustering(layout, truth.k, config.linkage);
      return fowlkes_mallows(truth, found);
    };
    FaithfulnessRecord rec;
    rec.graph = corpus[gi].name;
    rec.n = g.num_vertices();
    rec.communities = truth.k;
    rec.quality_resistance = quality(ResistanceMetric{&embedding, config.min_distance});
    rec.quality_shortest_path = quality(ShortestPathMetric{});
    rec.improvement = rec.quality_shortest_path > 0.0
                          ? rec.quality_resistance / rec.quality_shortest_path
                          : std::numeric_limits<double>::infinity();
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<RuntimeRecord> run_runtime_suite(const std::vector<CorpusGraph>& corpus,
                                             const RuntimeConfig& config) {
  if (config.repeats == 0) throw InputError("runtime suite: repeats must be positive");
  std::vector<RuntimeRecord> out;
  for (std::size_t gi = 0; gi < corpus.size(); ++gi) {
    const Graph& g = corpus[gi].graph;
    const std::uint64_t graph_seed = derive_seed(config.seed, gi);

    std::vector<double> pre, sgd, total;
    for (std::size_t r = 0; r < config.repeats; ++r) {
      OmegaParams params;
      params.samples_per_vertex = config.samples_per_vertex;
      params.rdmds = config.rdmds;
      params.rdmds.seed = graph_seed;
      params.schedule = config.schedule;
      params.seed = graph_seed;
      const OmegaResult res = omega_layout(g, params);
      pre.push_back(res.embedding_ms + res.pairs_ms);
      sgd.push_back(res.sgd_ms);
      total.push_back(pre.back() + sgd.back());
    }
    out.push_back({corpus[gi].name, g.num_vertices(), g.num_edges(), "omega", median(pre),
                   median(sgd), median(total)});

    pre.clear();
    sgd.clear();
    total.clear();
    for (std::size_t r = 0; r < config.repeats; ++r) {
      auto start = Clock::now();
      const PairSet pairs =
          build_pair_set_pivot(g, ShortestPathMetric{}, config.samples_per_vertex, graph_seed).pairs;
      pre.push_back(elapsed_ms(start));
      start = Clock::now();
      Layout2D layout = random_layout(g.num_vertices(), graph_seed);
      if (config.schedule.iterations > 0) {
        layout = sgd_optimize(std::move(layout), pairs,
                              AnnealingSchedule::for_pairs(config.schedule, pairs), graph_seed);
      }
      sgd.push_back(elapsed_ms(start));
      total.push_back(pre.back() + sgd.back());
    }
    out.push_back({corpus[gi].name, g.num_vertices(), g.num_edges(), "sparse-pivot", median(pre),
                   median(sgd), median(total)});
  }
  return out;
}

}  // namespace omega::bench
