// omega: resistance-distance graph layout from the command line.
//
//   omega layout --input graph.mtx --output coords.csv --svg drawing.svg
//   omega layout --generate grid:20,20 --algo sparse-pivot --metrics m.json
//   omega bench --suite sampling --h 10,30,50 --seed 1
//
// Exit codes: 0 success, 1 input error, 2 numerical failure, 3 limit
// violation.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "omega/bench.hpp"
#include "omega/error.hpp"
#include "omega/run.hpp"
#include "omega/svg.hpp"

namespace {

using nlohmann::json;
using namespace omega;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw InputError("failed writing '" + path + "'");
}

struct LayoutOptions {
  RunConfig config;
  std::string generate;
  std::string input_format = "auto";
  std::string algorithm = "omega";
  std::string metric = "auto";
  std::string linkage = "ward";
  std::string output;
  std::string svg;
  std::string metrics;
  std::string metadata;
  std::string embedding_csv;
  bool color_communities = false;
};

int run_layout(LayoutOptions& opt) {
  RunConfig& config = opt.config;
  if (!opt.generate.empty()) {
    if (!config.input.empty()) throw InputError("--input and --generate are mutually exclusive");
    config.input = opt.generate;
    config.input_format = InputFormat::Generator;
  } else {
    config.input_format = parse_input_format(opt.input_format);
  }
  config.algorithm = parse_algorithm(opt.algorithm);
  config.metric = parse_metric(opt.metric);
  config.linkage = parse_linkage(opt.linkage);

  const RunResult result = run(config);
  for (const auto& notice : result.input.notices) std::cerr << "notice: " << notice << '\n';

  std::ostringstream coords;
  write_coordinates_csv(coords, result.layout, result.input.labels);
  if (opt.output.empty() || opt.output == "-") {
    std::cout << coords.str();
  } else {
    write_file(opt.output, coords.str());
  }
  if (!opt.svg.empty()) {
    SvgOptions svg;
    if (opt.color_communities) svg.node_categories = greedy_modularity(result.input.graph).labels;
    write_file(opt.svg, render_svg(result.layout, result.input.graph, svg));
  }
  if (!opt.metrics.empty()) write_file(opt.metrics, metric_records(config, result).dump(2) + "\n");
  if (!opt.metadata.empty()) write_file(opt.metadata, run_metadata(config, result).dump(2) + "\n");
  if (!opt.embedding_csv.empty()) {
    if (!result.embedding) throw InputError("--embedding-csv needs the resistance metric");
    std::ostringstream e;
    write_embedding_csv(e, *result.embedding);
    write_file(opt.embedding_csv, e.str());
  }
  return 0;
}

struct BenchOptions {
  std::string suite;
  std::vector<std::size_t> h_values{50};
  std::uint64_t seed = 0;
  std::size_t seeds = 10;
  std::size_t repeats = 10;
  std::vector<std::size_t> edges{1000, 10000, 100000};
  std::size_t graphs = 10;
  std::string json_path;
};

json bench_sampling(const BenchOptions& opt, std::ostream& table) {
  bench::SamplingConfig config;
  config.h_values = opt.h_values;
  config.seeds = opt.seeds;
  config.seed = opt.seed;
  const auto corpus = bench::desk_corpus(opt.seed);
  const auto records = bench::run_sampling_suite(corpus, config);

  json out = {{"suite", "sampling"}, {"seed", opt.seed}, {"graphs", corpus.size()}};
  json rows = json::array();
  for (const auto& r : records) {
    rows.push_back({{"graph", r.graph},
                    {"n", r.n},
                    {"strategy", bench::to_string(r.strategy)},
                    {"metric", bench::to_string(r.metric)},
                    {"h", r.h},
                    {"seed", r.seed},
                    {"stress", r.stress},
                    {"reference_stress", r.reference_stress},
                    {"ratio", r.ratio}});
  }
  out["records"] = std::move(rows);

  json summary = json::array();
  table << "strategy  metric         h     median-ratio  runs\n";
  for (auto metric : {bench::MetricKind::Resistance, bench::MetricKind::ShortestPath}) {
    for (std::size_t h : opt.h_values) {
      for (auto strategy : {bench::Strategy::Random, bench::Strategy::Pivot}) {
        std::vector<double> ratios;
        for (const auto& r : records) {
          if (r.metric == metric && r.h == h && r.strategy == strategy) ratios.push_back(r.ratio);
        }
        const double m = bench::median(ratios);
        summary.push_back({{"strategy", bench::to_string(strategy)},
                           {"metric", bench::to_string(metric)},
                           {"h", h},
                           {"median_ratio", m},
                           {"runs", ratios.size()}});
        char line[128];
        std::snprintf(line, sizeof line, "%-9s %-14s %-5zu %-13.4f %zu\n", bench::to_string(strategy),
                      bench::to_string(metric), h, m, ratios.size());
        table << line;
      }
    }
  }
  out["summary"] = std::move(summary);
  return out;
}

json bench_faithfulness(const BenchOptions& opt, std::ostream& table) {
  bench::FaithfulnessConfig config;
  config.seed = opt.seed;
  const auto records = bench::run_faithfulness_suite(bench::planted_corpus(opt.seed, opt.graphs), config);
  json rows = json::array();
  std::vector<double> ratios;
  table << "graph                                         n     k   FM(res)  FM(sp)   ratio\n";
  for (const auto& r : records) {
    rows.push_back({{"graph", r.graph},
                    {"n", r.n},
                    {"communities", r.communities},
                    {"quality_resistance", r.quality_resistance},
                    {"quality_shortest_path", r.quality_shortest_path},
                    {"improvement", r.improvement}});
    ratios.push_back(r.improvement);
    char line[160];
    std::snprintf(line, sizeof line, "%-45s %-5zu %-3zu %-8.4f %-8.4f %.4f\n", r.graph.c_str(), r.n,
                  r.communities, r.quality_resistance, r.quality_shortest_path, r.improvement);
    table << line;
  }
  const double m = bench::median(ratios);
  table << "median improvement ratio: " << m << '\n';
  return {{"suite", "faithfulness"}, {"seed", opt.seed}, {"records", rows}, {"median_improvement", m}};
}

json bench_runtime(const BenchOptions& opt, std::ostream& table) {
  bench::RuntimeConfig config;
  config.seed = opt.seed;
  config.repeats = opt.repeats;
  config.samples_per_vertex = opt.h_values.front();
  std::vector<bench::CorpusGraph> corpus;
  for (std::size_t m : opt.edges) corpus.push_back(bench::scaling_graph(m, opt.seed));
  const auto records = bench::run_runtime_suite(corpus, config);
  json rows = json::array();
  table << "algorithm     n        m         preprocessing_ms  sgd_ms      total_ms\n";
  for (const auto& r : records) {
    rows.push_back({{"graph", r.graph},
                    {"n", r.n},
                    {"m", r.m},
                    {"algorithm", r.algorithm},
                    {"preprocessing_ms", r.preprocessing_ms},
                    {"sgd_ms", r.sgd_ms},
                    {"total_ms", r.total_ms}});
    char line[160];
    std::snprintf(line, sizeof line, "%-13s %-8zu %-9zu %-17.2f %-11.2f %.2f\n", r.algorithm.c_str(), r.n,
                  r.m, r.preprocessing_ms, r.sgd_ms, r.total_ms);
    table << line;
  }
  return {{"suite", "runtime"}, {"seed", opt.seed}, {"repeats", opt.repeats}, {"records", rows}};
}

int run_bench(const BenchOptions& opt) {
  if (opt.h_values.empty()) throw InputError("--h needs at least one value");
  std::ostringstream table;
  json out;
  if (opt.suite == "sampling") {
    out = bench_sampling(opt, table);
  } else if (opt.suite == "faithfulness") {
    out = bench_faithfulness(opt, table);
  } else if (opt.suite == "runtime") {
    out = bench_runtime(opt, table);
  } else {
    throw InputError("unknown suite '" + opt.suite + "'");
  }
  if (opt.json_path.empty()) {
    // JSON owns stdout; the table goes to stderr.
    std::cerr << table.str();
    std::cout << out.dump(2) << '\n';
  } else {
    write_file(opt.json_path, out.dump(2) + "\n");
    std::cout << table.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resistance-distance graph layout (RDMDS + Omega)"};
  app.require_subcommand(1);
  // "-h" would collide with "--h" (samples per vertex).
  app.set_help_flag("--help", "Print this help message and exit");

  LayoutOptions lay;
  RunConfig& c = lay.config;
  auto* layout = app.add_subcommand("layout", "Compute a 2D layout of one graph");
  auto* input = layout->add_option("--input", c.input, "Matrix Market (.mtx) or edge-list file");
  auto* generate = layout->add_option("--generate", lay.generate,
                                      "Generator spec, e.g. grid:20,20 or random_partition:15,100,0.05,0.0002,7");
  input->excludes(generate);
  layout->add_option("--input-format", lay.input_format, "auto | matrix-market | edge-list")
      ->check(CLI::IsMember({"auto", "matrix-market", "edge-list"}));
  layout->add_option("--algo,--algorithm", lay.algorithm,
                     "omega | sparse-pivot | full-sgd | rdmds-only | reference")
      ->capture_default_str();
  layout->add_option("--metric", lay.metric, "auto | resistance | shortest-path")->capture_default_str();
  layout->add_option("-d,--dimension", c.dimension, "Embedding dimension d")->capture_default_str();
  layout->add_option("--h,--samples-per-vertex", c.samples_per_vertex,
                     "Partner draws per vertex (pivots for sparse-pivot)")
      ->capture_default_str();
  layout->add_option("--eps-d,--min-distance", c.min_distance, "Floor on ideal distances")
      ->capture_default_str();
  layout->add_option("-T,--iterations", c.iterations, "SGD passes")->capture_default_str();
  layout->add_option("--epsilon", c.epsilon, "Final annealing ratio")->capture_default_str();
  layout->add_option("--sigma,--shift", c.shift, "Laplacian shift")->capture_default_str();
  layout->add_option("--eig-tol,--eig-tolerance", c.eig_tolerance, "Rayleigh quotient tolerance")
      ->capture_default_str();
  layout->add_option("--max-eig,--max-eig-iterations", c.max_eig_iterations,
                     "Inverse power iterations per eigenvector")
      ->capture_default_str();
  layout->add_option("--cg-tol,--cg-tolerance", c.cg_tolerance, "PCG tolerance")->capture_default_str();
  layout->add_option("--max-cg,--max-cg-iterations", c.max_cg_iterations, "PCG iterations per solve")
      ->capture_default_str();
  layout->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  layout->add_option("--k,--neighborhood-k", c.neighborhood_k, "k for neighborhood preservation")
      ->capture_default_str();
  layout->add_option("--linkage", lay.linkage, "ward | single | complete")->capture_default_str();
  layout->add_option("-o,--output", lay.output, "Coordinates CSV (default: stdout)");
  layout->add_option("--svg", lay.svg, "Write an SVG drawing");
  layout->add_flag("--color-communities", lay.color_communities,
                   "Color SVG nodes by greedy-modularity community");
  layout->add_option("--metrics", lay.metrics, "Write layout quality metrics (JSON)");
  layout->add_option("--metadata", lay.metadata, "Write run metadata (JSON)");
  layout->add_option("--embedding-csv", lay.embedding_csv, "Write the RDMDS embedding (CSV)");

  BenchOptions bench_opt;
  auto* bench = app.add_subcommand("bench", "Run an experiment suite");
  bench->add_option("--suite", bench_opt.suite, "sampling | faithfulness | runtime")
      ->required()
      ->check(CLI::IsMember({"sampling", "faithfulness", "runtime"}));
  bench->add_option("--seed", bench_opt.seed, "Random seed")->required();
  bench->add_option("--h", bench_opt.h_values, "Samples per vertex (comma separated)")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--seeds", bench_opt.seeds, "Seeds per graph (sampling)")->capture_default_str();
  bench->add_option("--repeats", bench_opt.repeats, "Timing repeats (runtime)")->capture_default_str();
  bench->add_option("--edges", bench_opt.edges, "Target edge counts (runtime)")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--graphs", bench_opt.graphs, "Planted-partition graphs (faithfulness)")
      ->capture_default_str();
  bench->add_option("--json", bench_opt.json_path, "Write JSON here and the table to stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*layout) {
      if (c.input.empty() && lay.generate.empty()) throw InputError("one of --input or --generate is required");
      return run_layout(lay);
    }
    return run_bench(bench_opt);
  } catch (const LimitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
