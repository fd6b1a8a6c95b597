#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "omega/io.hpp"
#include "omega/layout.hpp"
#include "omega/metrics.hpp"
#include "omega/rdmds.hpp"

namespace omega {

enum class InputFormat { Auto, MatrixMarket, EdgeList, Generator };
enum class Algorithm { Omega, SparsePivot, FullSgd, RdmdsOnly, Reference };
enum class MetricChoice { Auto, Resistance, ShortestPath };

// Every parameter that influences a layout run.
struct RunConfig {
  std::string input;  // path, or generator spec for InputFormat::Generator
  InputFormat input_format = InputFormat::Auto;
  Algorithm algorithm = Algorithm::Omega;
  // Auto: resistance for omega and rdmds-only, shortest paths otherwise.
  MetricChoice metric = MetricChoice::Auto;

  std::size_t dimension = 10;
  std::size_t samples_per_vertex = 50;
  double min_distance = 0.01;
  std::size_t iterations = 15;
  double epsilon = 0.1;
  double shift = 1e-6;
  double eig_tolerance = 1e-5;
  std::size_t max_eig_iterations = 100;
  double cg_tolerance = 0.1;
  std::size_t max_cg_iterations = 100;
  std::uint64_t seed = 0;

  std::size_t neighborhood_k = kDefaultNeighborhoodK;
  Linkage linkage = Linkage::Ward;
};

struct RunResult {
  LoadedGraph input;
  Layout2D layout;
  std::optional<SpectralEmbedding> embedding;
  MetricChoice metric = MetricChoice::Resistance;  // resolved
  std::size_t num_pairs = 0;
  double embedding_ms = 0.0;
  double pairs_ms = 0.0;
  double sgd_ms = 0.0;
};

const char* to_string(Algorithm a);
const char* to_string(MetricChoice m);
const char* to_string(InputFormat f);
const char* to_string(Linkage l);
Algorithm parse_algorithm(const std::string& s);
MetricChoice parse_metric(const std::string& s);
InputFormat parse_input_format(const std::string& s);
Linkage parse_linkage(const std::string& s);

RdmdsParams rdmds_params(const RunConfig& config);

// Throws InputError for invalid parameter combinations.
void validate(const RunConfig& config);

LoadedGraph load_input(const RunConfig& config);

RunResult run(const RunConfig& config);
RunResult run(const RunConfig& config, LoadedGraph input);

// Effective parameters, graph size, notices, solver statistics and the
// preprocessing / SGD timing split.
nlohmann::json run_metadata(const RunConfig& config, const RunResult& result);

// One record per layout quality metric:
// {graph, metric, metric_params, value, seed, wall_time_ms}.
nlohmann::json metric_records(const RunConfig& config, const RunResult& result);

}  // namespace omega
