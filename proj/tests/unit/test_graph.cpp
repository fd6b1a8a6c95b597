#include <Eigen/Dense>

#include <vector>

#include "doctest.h"
#include "../corpus.hpp"
#include "../oracles.hpp"
#include "omega/error.hpp"
#include "omega/generators.hpp"
#include "omega/graph.hpp"
#include "omega/sparse.hpp"

using namespace omega;

namespace {

Graph make(std::size_t n, std::vector<Edge> edges) { return Graph(n, edges); }

void check_dense(const SparseSymmetricMatrix& a, const std::vector<std::vector<double>>& want) {
  REQUIRE(a.dimension() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i)
    for (std::size_t j = 0; j < want.size(); ++j) CHECK(a(i, j) == want[i][j]);
}

}  // namespace

TEST_CASE("from_edge_list defaults, merging and self-loops") {
  SUBCASE("P3 with unit weights") {
    std::vector<RawEdge> raw{{0, 1, {}}, {1, 2, {}}};
    const Graph g = from_edge_list(raw);
    CHECK(g.num_vertices() == 3);
    CHECK(g.num_edges() == 2);
    for (const auto& e : g.edges()) CHECK(e.weight == 1.0);
    CHECK(g.has_unit_weights());
  }
  SUBCASE("parallel edges sum") {
    std::vector<RawEdge> raw{{0, 1, 2.0}, {0, 1, 3.0}};
    const Graph g = from_edge_list(raw);
    REQUIRE(g.num_edges() == 1);
    CHECK(g.edges()[0].weight == 5.0);
  }
  SUBCASE("self-loop dropped") {
    std::vector<RawEdge> raw{{0, 0, {}}, {0, 1, {}}};
    const Graph g = from_edge_list(raw);
    CHECK(g.num_vertices() == 2);
    REQUIRE(g.num_edges() == 1);
    CHECK(g.edges()[0].u == 0);
    CHECK(g.edges()[0].v == 1);
  }
  SUBCASE("ids compacted by first appearance") {
    std::vector<RawEdge> raw{{17, -4, {}}, {-4, 99, {}}};
    const Graph g = from_edge_list(raw);
    CHECK(g.num_vertices() == 3);
    CHECK(g.degree(1) == 2);  // -4 was seen second
  }
  SUBCASE("rejections") {
    std::vector<RawEdge> empty;
    CHECK_THROWS_AS(from_edge_list(empty), InputError);
    std::vector<RawEdge> bad{{0, 1, 1.0}, {1, 2, -1.0}};
    CHECK_THROWS_WITH_AS(from_edge_list(bad), doctest::Contains("2"), InputError);
    std::vector<RawEdge> zero{{0, 1, 0.0}};
    CHECK_THROWS_AS(from_edge_list(zero), InputError);
  }
}

TEST_CASE("Graph constructor validation") {
  CHECK_THROWS_AS(make(2, {{0, 2, 1.0}}), InputError);
  CHECK_THROWS_AS(make(2, {{0, 1, std::numeric_limits<double>::infinity()}}), InputError);
  const Graph g = make(3, {{2, 0, 1.0}, {1, 0, 2.0}});
  CHECK(g.edges()[0].u == 0);
  CHECK(g.edges()[0].v == 1);
  CHECK(g.edges()[1].v == 2);
  CHECK(g.weighted_degree(0) == 3.0);
  CHECK_FALSE(g.has_unit_weights());
}

TEST_CASE("largest_connected_component") {
  SUBCASE("connected input unchanged") {
    const Graph p3 = generators::path(3);
    const auto lcc = largest_connected_component(p3);
    CHECK(lcc.graph.num_vertices() == 3);
    CHECK(lcc.new_to_old == std::vector<Vertex>{0, 1, 2});
  }
  SUBCASE("P3 beats K2") {
    const Graph g = make(5, {{0, 1}, {2, 3}, {3, 4}});
    const auto lcc = largest_connected_component(g);
    CHECK(lcc.graph.num_vertices() == 3);
    CHECK(lcc.new_to_old == std::vector<Vertex>{2, 3, 4});
    CHECK(lcc.old_to_new[0] == kNoVertex);
    CHECK(lcc.old_to_new[4] == 2);
  }
  SUBCASE("tie goes to the component holding vertex 0") {
    const Graph g = make(6, {{3, 4}, {4, 5}, {3, 5}, {0, 1}, {1, 2}, {0, 2}});
    const auto lcc = largest_connected_component(g);
    CHECK(lcc.new_to_old == std::vector<Vertex>{0, 1, 2});
  }
  SUBCASE("idempotent") {
    const Graph g = make(7, {{0, 1}, {2, 3}, {3, 4}, {4, 5}, {5, 6}});
    const auto once = largest_connected_component(g);
    const auto twice = largest_connected_component(once.graph);
    CHECK(twice.graph.num_vertices() == once.graph.num_vertices());
    CHECK(twice.graph.num_edges() == once.graph.num_edges());
    for (std::size_t i = 0; i < twice.new_to_old.size(); ++i) CHECK(twice.new_to_old[i] == i);
  }
}

TEST_CASE("laplacian examples") {
  check_dense(laplacian(generators::path(3)), {{1, -1, 0}, {-1, 2, -1}, {0, -1, 1}});
  check_dense(laplacian(generators::complete(3)), {{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}});
  check_dense(laplacian(make(2, {{0, 1, 5.0}})), {{5, -5}, {-5, 5}});
}

TEST_CASE("generators") {
  const Graph bt = generators::binomial_tree(13);
  CHECK(bt.num_vertices() == 8192);
  CHECK(bt.num_edges() == 8191);
  CHECK(bt.is_connected());
  CHECK(generators::complete(4).num_edges() == 6);
  CHECK(generators::cycle(5).num_edges() == 5);
  CHECK(generators::grid(3, 4).num_edges() == 17);
  CHECK_THROWS_AS(generators::random_partition(2, 3, 1.0, 0.0, 1), LimitError);

  const Graph a = generators::random_partition(3, 10, 0.5, 0.05, 42);
  const Graph b = generators::random_partition(3, 10, 0.5, 0.05, 42);
  CHECK(a.is_connected());
  REQUIRE(a.num_edges() == b.num_edges());
  for (std::size_t i = 0; i < a.num_edges(); ++i) {
    CHECK(a.edges()[i].u == b.edges()[i].u);
    CHECK(a.edges()[i].v == b.edges()[i].v);
  }
  const Graph t = generators::random_tree(50, 3, 0.5, 2.0);
  CHECK(t.num_edges() == 49);
  CHECK(t.is_connected());
}

TEST_CASE("laplacian properties over the corpus") {
  for (const auto& item : testcorpus::small_corpus()) {
    CAPTURE(item.name);
    const Graph& g = item.graph;
    const auto L = laplacian(g);
    const double scale = g.max_weighted_degree();
    for (std::size_t i = 0; i < g.num_vertices(); ++i) {
      double sum = 0.0;
      for (double v : L.row_values(i)) sum += v;
      CHECK(std::abs(sum) <= 1e-12 * scale);
      CHECK(L.diagonal(i) == doctest::Approx(g.weighted_degree(i)));
    }
    if (g.num_vertices() <= 50) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(oracle::dense_laplacian(g));
      CHECK(std::abs(es.eigenvalues()(0)) < 1e-8);
      CHECK(es.eigenvalues()(1) > 1e-8);
    }
  }
}
