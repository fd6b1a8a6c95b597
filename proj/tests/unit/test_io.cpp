#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "omega/error.hpp"
#include "omega/generators.hpp"
#include "omega/io.hpp"
#include "omega/layout.hpp"
#include "omega/random.hpp"
#include "omega/run.hpp"
#include "omega/svg.hpp"

using namespace omega;

namespace {

LoadedGraph mm(const std::string& text) {
  std::istringstream in(text);
  return parse_matrix_market(in);
}

LoadedGraph edges(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("Matrix Market parsing") {
  SUBCASE("pattern P3") {
    const auto g = mm("%%MatrixMarket matrix coordinate pattern symmetric\n% comment\n3 3 2\n2 1\n3 2\n");
    CHECK(g.graph.num_vertices() == 3);
    CHECK(g.graph.num_edges() == 2);
    CHECK(g.labels == std::vector<std::string>{"1", "2", "3"});
  }
  SUBCASE("diagonal entries dropped, magnitudes kept") {
    const auto g = mm("%%MatrixMarket matrix coordinate real general\n3 3 4\n2 2 5.0\n1 3 -4.0\n1 2 1\n3 3 1\n");
    REQUIRE(g.graph.num_edges() == 2);
    CHECK(g.graph.edges()[1].u == 0);
    CHECK(g.graph.edges()[1].v == 2);
    CHECK(g.graph.edges()[1].weight == 4.0);
  }
  SUBCASE("zero values dropped") {
    const auto g = mm("%%MatrixMarket matrix coordinate real symmetric\n3 3 3\n2 1 0\n3 2 1\n3 1 2\n");
    CHECK(g.graph.num_edges() == 2);
  }
  SUBCASE("largest component extracted with a notice") {
    const auto g = mm("%%MatrixMarket matrix coordinate pattern symmetric\n5 5 3\n2 1\n3 2\n5 4\n");
    CHECK(g.graph.num_vertices() == 3);
    CHECK_FALSE(g.notices.empty());
  }
  SUBCASE("malformed input reports a line number") {
    CHECK_THROWS_AS(mm("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n"), InputError);
    CHECK_THROWS_AS(mm("%%MatrixMarket matrix coordinate complex general\n2 2 1\n1 2 1 0\n"), InputError);
    CHECK_THROWS_WITH_AS(mm("%%MatrixMarket matrix coordinate real general\n3 3 2\n2 1 1\n4 1 1\n"),
                         doctest::Contains("line 4"), InputError);
    CHECK_THROWS_WITH_AS(mm("%%MatrixMarket matrix coordinate real general\n3 3 2\n2 1 x\n"),
                         doctest::Contains("line 3"), InputError);
    CHECK_THROWS_AS(mm("not a header\n"), InputError);
    CHECK_THROWS_AS(mm("%%MatrixMarket matrix coordinate real general\n3 3 3\n2 1 1\n"), InputError);
  }
}

TEST_CASE("edge list parsing") {
  const auto g = edges("# comment\nalice bob 2\nbob carol\n\ncarol alice 0.5  # trailing\n");
  CHECK(g.graph.num_vertices() == 3);
  CHECK(g.graph.num_edges() == 3);
  CHECK(g.labels == std::vector<std::string>{"alice", "bob", "carol"});
  CHECK_THROWS_AS(edges("a b -1\n"), InputError);
  CHECK_THROWS_WITH_AS(edges("a b\nc\n"), doctest::Contains("line 2"), InputError);
  CHECK_THROWS_AS(edges("# nothing\n"), InputError);
}

TEST_CASE("generator specs") {
  CHECK(generate_from_spec("grid:3,4").graph.num_vertices() == 12);
  CHECK(generate_from_spec("binomial_tree:5").graph.num_edges() == 31);
  CHECK(generate_from_spec("random_partition:3,10,0.5,0.05,1").graph.num_vertices() == 30);
  CHECK(generate_from_spec("complete:5").graph.num_edges() == 10);
  CHECK_THROWS_AS(generate_from_spec("grid:3"), InputError);
  CHECK_THROWS_AS(generate_from_spec("hypercube:3"), InputError);
}

TEST_CASE("coordinates CSV round trip is bit-identical") {
  Rng rng(5);
  Layout2D y(50);
  for (auto& p : y.points) p = {rng.uniform(-1e6, 1e6) * rng.uniform(), std::ldexp(rng.uniform(), -900)};
  y[0] = {0.1, -0.0};
  y[1] = {1.0 / 3.0, 5e-324};
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < y.size(); ++i) labels.push_back("v" + std::to_string(i));
  std::ostringstream out;
  write_coordinates_csv(out, y, labels);
  CHECK(out.str().rfind("id,x,y\n", 0) == 0);
  std::istringstream in(out.str());
  const auto back = read_coordinates_csv(in);
  CHECK(back.labels == labels);
  REQUIRE(back.layout.size() == y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    CHECK(std::bit_cast<std::uint64_t>(back.layout[i].x) == std::bit_cast<std::uint64_t>(y[i].x));
    CHECK(std::bit_cast<std::uint64_t>(back.layout[i].y) == std::bit_cast<std::uint64_t>(y[i].y));
  }
}

TEST_CASE("render_svg") {
  std::vector<Edge> e{{0, 1}};
  const Graph g(2, e);
  const Layout2D y({{0, 0}, {1, 1}});
  const std::string svg = render_svg(y, g);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(count(svg, "<line") == 1);
  CHECK(count(svg, "<circle") == 2);
  CHECK(count(svg, "#1f77b4") == 2);  // default fill on both nodes

  SvgOptions colored;
  colored.node_categories = {0, 1};
  const std::string c = render_svg(y, g, colored);
  CHECK(count(c, "<circle") == 2);
  CHECK(c.find("#ff7f0e") != std::string::npos);

  // Everything stays inside the viewport with the 5% margin.
  const Layout2D far({{-1e3, 7}, {2e3, 7}});
  const std::string f = render_svg(far, g);
  CHECK(f.find("x1=\"40\"") != std::string::npos);
  CHECK(f.find("x2=\"760\"") != std::string::npos);

  CHECK_THROWS_AS(render_svg(Layout2D({{0, 0}}), g), InputError);
  CHECK_THROWS_AS(render_svg(Layout2D({{0, NAN}, {1, 1}}), g), InputError);
  SvgOptions wrong;
  wrong.node_categories = {0};
  CHECK_THROWS_AS(render_svg(y, g, wrong), InputError);
}

TEST_CASE("run pipeline") {
  RunConfig config;
  config.input = "grid:6,6";
  config.input_format = InputFormat::Generator;

  SUBCASE("rdmds-only with d = 2 is the first two embedding columns") {
    config.algorithm = Algorithm::RdmdsOnly;
    config.dimension = 2;
    const auto res = run(config);
    REQUIRE(res.embedding);
    for (Vertex i = 0; i < 36; ++i) {
      CHECK(res.layout[i].x == res.embedding->coordinate(i, 0));
      CHECK(res.layout[i].y == res.embedding->coordinate(i, 1));
    }
  }
  SUBCASE("identical configurations give identical outputs") {
    for (auto algo : {Algorithm::Omega, Algorithm::SparsePivot, Algorithm::FullSgd}) {
      config.algorithm = algo;
      const auto a = run(config);
      const auto b = run(config);
      auto strip = [](nlohmann::json j) {
        j.erase("timings_ms");
        return j;
      };
      CHECK(strip(run_metadata(config, a)) == strip(run_metadata(config, b)));
      std::ostringstream ca, cb;
      write_coordinates_csv(ca, a.layout, a.input.labels);
      write_coordinates_csv(cb, b.layout, b.input.labels);
      CHECK(ca.str() == cb.str());
    }
  }
  SUBCASE("metadata records every parameter and both timing phases") {
    const auto res = run(config);
    const auto meta = run_metadata(config, res);
    for (const char* key : {"dimension", "samples_per_vertex", "min_distance", "iterations", "epsilon",
                            "shift", "eig_tolerance", "max_eig_iterations", "cg_tolerance",
                            "max_cg_iterations", "seed", "neighborhood_k", "linkage"})
      CHECK(meta["parameters"].contains(key));
    CHECK(meta["timings_ms"].contains("preprocessing"));
    CHECK(meta["timings_ms"].contains("sgd"));
    CHECK(meta["algorithm"] == "omega");
    CHECK(meta["metric"] == "resistance");
    CHECK(meta["input"]["vertices"] == 36);

    const auto records = metric_records(config, res);
    REQUIRE(records.is_array());
    CHECK(records.size() == 3);
    for (const auto& r : records) {
      for (const char* key : {"graph", "metric", "metric_params", "value", "seed", "wall_time_ms"})
        CHECK(r.contains(key));
    }
  }
  SUBCASE("seed changes the layout") {
    const auto a = run(config);
    config.seed = 1;
    const auto b = run(config);
    CHECK(a.layout[0].x != b.layout[0].x);
  }
  SUBCASE("invalid configurations") {
    config.dimension = 0;
    CHECK_THROWS_AS(run(config), InputError);
    config.dimension = 10;
    config.epsilon = 1.5;
    CHECK_THROWS_AS(run(config), InputError);
    config.epsilon = 0.1;
    config.input = "/nonexistent/graph.mtx";
    config.input_format = InputFormat::Auto;
    CHECK_THROWS_AS(run(config), InputError);
  }
  SUBCASE("enum parsing") {
    CHECK(parse_algorithm("sparse-pivot") == Algorithm::SparsePivot);
    CHECK(parse_metric("shortest-path") == MetricChoice::ShortestPath);
    CHECK(parse_linkage("single") == Linkage::Single);
    CHECK(std::string(to_string(Algorithm::FullSgd)) == "full-sgd");
    CHECK_THROWS_AS(parse_algorithm("magic"), InputError);
  }
}
