#include "omega/run.hpp"

#include <chrono>
#include <cmath>
#include <map>

#include "omega/error.hpp"
#include "omega/random.hpp"

namespace omega {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

template <class Enum>
Enum lookup(const std::map<std::string, Enum>& table, const std::string& key, const char* what) {
  const auto it = table.find(key);
  if (it == table.end()) {
    std::string choices;
    for (const auto& [name, value] : table) choices += (choices.empty() ? "" : ", ") + name;
    throw InputError(std::string("unknown ") + what + " '" + key + "' (expected " + choices + ")");
  }
  return it->second;
}

MetricChoice resolve_metric(const RunConfig& config) {
  if (config.metric != MetricChoice::Auto) return config.metric;
  switch (config.algorithm) {
    case Algorithm::Omega:
    case Algorithm::RdmdsOnly:
      return MetricChoice::Resistance;
    default:
      return MetricChoice::ShortestPath;
  }
}

}  // namespace

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Omega: return "omega";
    case Algorithm::SparsePivot: return "sparse-pivot";
    case Algorithm::FullSgd: return "full-sgd";
    case Algorithm::RdmdsOnly: return "rdmds-only";
    case Algorithm::Reference: return "reference";
  }
  return "?";
}

const char* to_string(MetricChoice m) {
  switch (m) {
    case MetricChoice::Auto: return "auto";
    case MetricChoice::Resistance: return "resistance";
    case MetricChoice::ShortestPath: return "shortest-path";
  }
  return "?";
}

const char* to_string(InputFormat f) {
  switch (f) {
    case InputFormat::Auto: return "auto";
    case InputFormat::MatrixMarket: return "matrix-market";
    case InputFormat::EdgeList: return "edge-list";
    case InputFormat::Generator: return "generator";
  }
  return "?";
}

const char* to_string(Linkage l) {
  switch (l) {
    case Linkage::Ward: return "ward";
    case Linkage::Single: return "single";
    case Linkage::Complete: return "complete";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& s) {
  static const std::map<std::string, Algorithm> table = {
      {"omega", Algorithm::Omega},         {"sparse-pivot", Algorithm::SparsePivot},
      {"full-sgd", Algorithm::FullSgd},    {"rdmds-only", Algorithm::RdmdsOnly},
      {"reference", Algorithm::Reference},
  };
  return lookup(table, s, "algorithm");
}

MetricChoice parse_metric(const std::string& s) {
  static const std::map<std::string, MetricChoice> table = {
      {"auto", MetricChoice::Auto},
      {"resistance", MetricChoice::Resistance},
      {"shortest-path", MetricChoice::ShortestPath},
  };
  return lookup(table, s, "metric");
}

InputFormat parse_input_format(const std::string& s) {
  static const std::map<std::string, InputFormat> table = {
      {"auto", InputFormat::Auto},
      {"matrix-market", InputFormat::MatrixMarket},
      {"edge-list", InputFormat::EdgeList},
      {"generator", InputFormat::Generator},
  };
  return lookup(table, s, "input format");
}

Linkage parse_linkage(const std::string& s) {
  static const std::map<std::string, Linkage> table = {
      {"ward", Linkage::Ward}, {"single", Linkage::Single}, {"complete", Linkage::Complete}};
  return lookup(table, s, "linkage");
}

RdmdsParams rdmds_params(const RunConfig& config) {
  RdmdsParams p;
  p.dimension = config.dimension;
  p.shift = config.shift;
  p.eig_tolerance = config.eig_tolerance;
  p.max_eig_iterations = config.max_eig_iterations;
  p.pcg = {config.cg_tolerance, config.max_cg_iterations};
  p.seed = config.seed;
  return p;
}

void validate(const RunConfig& config) {
  const MetricChoice metric = resolve_metric(config);
  if (config.algorithm == Algorithm::RdmdsOnly && metric != MetricChoice::Resistance) {
    throw InputError("rdmds-only produces resistance-distance coordinates only");
  }
  if (metric == MetricChoice::Resistance && config.dimension == 0) {
    throw InputError("dimension must be positive");
  }
  if ((config.algorithm == Algorithm::Omega || config.algorithm == Algorithm::RdmdsOnly) &&
      metric == MetricChoice::Resistance && config.dimension < 2) {
    throw InputError("a two-dimensional layout needs dimension >= 2");
  }
  if (config.algorithm == Algorithm::SparsePivot && config.samples_per_vertex == 0) {
    throw InputError("sparse-pivot needs at least one pivot");
  }
  if (!(config.min_distance > 0.0)) throw InputError("min distance must be positive");
  if (!(config.epsilon > 0.0)) throw InputError("epsilon must be positive");
  if (!(config.shift > 0.0)) throw InputError("shift must be positive");
  if (!(config.eig_tolerance > 0.0) || !(config.cg_tolerance > 0.0)) {
    throw InputError("solver tolerances must be positive");
  }
  if (config.max_eig_iterations == 0 || config.max_cg_iterations == 0) {
    throw InputError("solver iteration caps must be positive");
  }
  if (config.neighborhood_k == 0) throw InputError("neighborhood k must be positive");
}

LoadedGraph load_input(const RunConfig& config) {
  if (config.input.empty()) throw InputError("no input given");
  switch (config.input_format) {
    case InputFormat::Generator: return generate_from_spec(config.input);
    case InputFormat::MatrixMarket: return parse_matrix_market(std::filesystem::path(config.input));
    case InputFormat::EdgeList: return parse_edge_list(std::filesystem::path(config.input));
    case InputFormat::Auto: break;
  }
  return load_graph(config.input);
}

RunResult run(const RunConfig& config) {
  validate(config);
  return run(config, load_input(config));
}

RunResult run(const RunConfig& config, LoadedGraph input) {
  validate(config);
  RunResult out;
  out.input = std::move(input);
  out.metric = resolve_metric(config);
  const Graph& g = out.input.graph;
  const ScheduleParams schedule{config.iterations, config.epsilon};

  // Omega with its own metric is the published pipeline end to end.
  if (config.algorithm == Algorithm::Omega && out.metric == MetricChoice::Resistance) {
    OmegaParams params;
    params.samples_per_vertex = config.samples_per_vertex;
    params.min_distance = config.min_distance;
    params.rdmds = rdmds_params(config);
    params.schedule = schedule;
    params.seed = config.seed;
    OmegaResult res = omega_layout(g, params);
    out.layout = std::move(res.layout);
    out.embedding = std::move(res.embedding);
    out.num_pairs = res.pairs.size();
    out.embedding_ms = res.embedding_ms;
    out.pairs_ms = res.pairs_ms;
    out.sgd_ms = res.sgd_ms;
    return out;
  }

  auto start = Clock::now();
  if (out.metric == MetricChoice::Resistance) {
    out.embedding = compute_embedding(g, rdmds_params(config));
    out.embedding_ms = elapsed_ms(start);
  }
  const DistanceMetric metric =
      out.metric == MetricChoice::Resistance
          ? DistanceMetric{ResistanceMetric{&*out.embedding, config.min_distance}}
          : DistanceMetric{ShortestPathMetric{}};

  auto optimize = [&](const PairSet& pairs, Layout2D layout, std::uint64_t stream) {
    out.num_pairs = pairs.size();
    start = Clock::now();
    if (schedule.iterations > 0 && !pairs.empty()) {
      layout = sgd_optimize(std::move(layout), pairs, AnnealingSchedule::for_pairs(schedule, pairs),
                            derive_seed(config.seed, stream));
    }
    out.sgd_ms = elapsed_ms(start);
    return layout;
  };

  switch (config.algorithm) {
    case Algorithm::RdmdsOnly:
      out.layout = spectral_layout(*out.embedding);
      break;
    case Algorithm::Omega: {
      start = Clock::now();
      const PairSet pairs = build_pair_set_random(g, metric, config.samples_per_vertex,
                                                  derive_seed(config.seed, 10));
      out.pairs_ms = elapsed_ms(start);
      out.layout = optimize(pairs, initial_layout(g, metric, config.seed, InitMode::ByMetric), 11);
      break;
    }
    case Algorithm::SparsePivot: {
      start = Clock::now();
      const PairSet pairs = build_pair_set_pivot(g, metric, config.samples_per_vertex,
                                                 derive_seed(config.seed, 10))
                                .pairs;
      out.pairs_ms = elapsed_ms(start);
      out.layout = optimize(pairs, initial_layout(g, metric, config.seed, InitMode::ByMetric), 11);
      break;
    }
    case Algorithm::FullSgd: {
      // Same construction as full_sgd_layout, split for timing.
      start = Clock::now();
      const PairSet pairs = build_pair_set_all(g, metric);
      out.pairs_ms = elapsed_ms(start);
      out.layout = optimize(pairs, initial_layout(g, metric, config.seed, InitMode::ByMetric), 13);
      break;
    }
    case Algorithm::Reference: {
      start = Clock::now();
      ReferenceParams params;
      params.epsilon = config.epsilon;
      out.layout = reference_optimum(g, metric, config.seed, params).layout;
      out.sgd_ms = elapsed_ms(start);
      out.num_pairs = g.num_vertices() * (g.num_vertices() - 1) / 2;
      break;
    }
  }
  return out;
}

nlohmann::json run_metadata(const RunConfig& config, const RunResult& result) {
  using nlohmann::json;
  json meta;
  meta["input"] = {
      {"source", config.input},
      {"format", to_string(config.input_format)},
      {"vertices", result.input.graph.num_vertices()},
      {"edges", result.input.graph.num_edges()},
      {"notices", result.input.notices},
  };
  meta["algorithm"] = to_string(config.algorithm);
  meta["metric"] = to_string(result.metric);
  meta["parameters"] = {
      {"dimension", config.dimension},
      {"samples_per_vertex", config.samples_per_vertex},
      {"min_distance", config.min_distance},
      {"iterations", config.iterations},
      {"epsilon", config.epsilon},
      {"shift", config.shift},
      {"eig_tolerance", config.eig_tolerance},
      {"max_eig_iterations", config.max_eig_iterations},
      {"cg_tolerance", config.cg_tolerance},
      {"max_cg_iterations", config.max_cg_iterations},
      {"seed", config.seed},
      {"neighborhood_k", config.neighborhood_k},
      {"linkage", to_string(config.linkage)},
  };
  meta["pairs"] = result.num_pairs;
  const double preprocessing = result.embedding_ms + result.pairs_ms;
  meta["timings_ms"] = {
      {"embedding", result.embedding_ms},
      {"pairs", result.pairs_ms},
      {"preprocessing", preprocessing},
      {"sgd", result.sgd_ms},
      {"total", preprocessing + result.sgd_ms},
  };
  if (result.embedding) {
    const auto& e = *result.embedding;
    const auto& stats = e.stats();
    std::vector<bool> converged(stats.converged.begin(), stats.converged.end());
    meta["solver"] = {
        {"eigenvalues", std::vector<double>(e.eigenvalues().begin(), e.eigenvalues().end())},
        {"power_iterations", stats.power_iterations},
        {"converged", converged},
        {"cg_iterations", stats.cg_iterations},
        {"ic_diagonal_shift", stats.ic_diagonal_shift},
    };
  }
  return meta;
}

nlohmann::json metric_records(const RunConfig& config, const RunResult& result) {
  using nlohmann::json;
  json records = json::array();
  const Graph& g = result.input.graph;
  const std::string graph = config.input;
  auto record = [&](const char* name, json params, auto&& compute) {
    const auto start = Clock::now();
    const double value = compute();
    records.push_back({{"graph", graph},
                       {"metric", name},
                       {"metric_params", std::move(params)},
                       {"value", value},
                       {"seed", config.seed},
                       {"wall_time_ms", elapsed_ms(start)}});
  };

  if (g.num_vertices() <= kDefaultAllPairsCap) {
    record("stress", {{"metric", to_string(result.metric)}, {"pairs", "all"}}, [&] {
      const DistanceMetric metric =
          result.metric == MetricChoice::Resistance
              ? DistanceMetric{ResistanceMetric{&*result.embedding, config.min_distance}}
              : DistanceMetric{ShortestPathMetric{}};
      return stress(result.layout, build_pair_set_all(g, metric));
    });
  }
  if (config.neighborhood_k < g.num_vertices()) {
    record("neighborhood_preservation", {{"k", config.neighborhood_k}},
           [&] { return neighborhood_preservation(g, result.layout, config.neighborhood_k); });
  }
  if (g.num_vertices() <= 20000) {
    record("clustering_quality", {{"linkage", to_string(config.linkage)}},
           [&] { return clustering_quality(g, result.layout, config.linkage); });
  }
  return records;
}

}  // namespace omega
