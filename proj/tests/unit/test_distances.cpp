#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "doctest.h"
#include "../corpus.hpp"
#include "../oracles.hpp"
#include "omega/distances.hpp"
#include "omega/error.hpp"
#include "omega/generators.hpp"
#include "omega/random.hpp"

using namespace omega;

TEST_CASE("bfs examples") {
  CHECK(bfs_distances(generators::path(3), 0).dist == std::vector<double>{0, 1, 2});
  CHECK(bfs_distances(generators::complete(4), 2).dist == std::vector<double>{1, 1, 0, 1});
  CHECK(bfs_distances(generators::cycle(6), 0).dist == std::vector<double>{0, 1, 2, 3, 2, 1});
}

TEST_CASE("dijkstra examples") {
  std::vector<Edge> p{{0, 1, 2.0}, {1, 2, 3.0}};
  CHECK(dijkstra_distances(Graph(3, p), 0).dist == std::vector<double>{0, 2, 5});
  std::vector<Edge> tri{{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 3.0}};
  CHECK(dijkstra_distances(Graph(3, tri), 0).dist[2] == 2.0);

  std::vector<Edge> split{{0, 1}, {2, 3}};
  const auto d = dijkstra_distances(Graph(4, split), 0);
  CHECK(std::isinf(d.dist[2]));
}

TEST_CASE("dijkstra equals bfs on unit weights") {
  for (const auto& item : testcorpus::small_corpus()) {
    if (!item.graph.has_unit_weights()) continue;
    CAPTURE(item.name);
    for (Vertex s = 0; s < item.graph.num_vertices(); s += 7)
      CHECK(dijkstra_distances(item.graph, s).dist == bfs_distances(item.graph, s).dist);
  }
}

TEST_CASE("all-pairs shortest paths match Floyd-Warshall") {
  for (const auto& item : testcorpus::small_corpus()) {
    if (item.graph.num_vertices() > 120) continue;
    CAPTURE(item.name);
    const auto apsp = all_pairs_shortest_paths(item.graph);
    const auto ref = oracle::shortest_paths(item.graph);
    for (std::size_t i = 0; i < ref.size(); ++i)
      for (std::size_t j = 0; j < ref.size(); ++j)
        CHECK(apsp(i, j) == doctest::Approx(ref[i][j]).epsilon(1e-12));
  }
  CHECK_THROWS_AS(all_pairs_shortest_paths(generators::path(20), 10), LimitError);
}

TEST_CASE("exact resistance examples") {
  const auto k3 = exact_resistance_matrix(generators::complete(3));
  for (Vertex i = 0; i < 3; ++i)
    for (Vertex j = 0; j < 3; ++j) CHECK(k3(i, j) == doctest::Approx(i == j ? 0.0 : 2.0 / 3.0));
  CHECK(exact_resistance_matrix(generators::path(3))(0, 2) == doctest::Approx(2.0));
  std::vector<Edge> e{{0, 1, 4.0}};
  CHECK(exact_resistance_matrix(Graph(2, e))(0, 1) == doctest::Approx(0.25));

  std::vector<Edge> split{{0, 1}, {2, 3}};
  CHECK_THROWS_AS(exact_resistance_matrix(Graph(4, split)), InputError);
  CHECK_THROWS_AS(exact_resistance_matrix(generators::path(30), 10), LimitError);
}

TEST_CASE("exact resistance against the pseudoinverse oracle") {
  for (const auto& item : testcorpus::small_corpus()) {
    if (item.graph.num_vertices() > 100) continue;
    CAPTURE(item.name);
    const auto r = exact_resistance_matrix(item.graph);
    const Eigen::MatrixXd ref = oracle::resistance(item.graph);
    const std::size_t n = item.graph.num_vertices();
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(r(i, i) == 0.0);
      for (std::size_t j = i + 1; j < n; ++j) {
        CHECK(r(i, j) == r(j, i));
        CHECK(r(i, j) == doctest::Approx(ref(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)))
                             .epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("resistance never exceeds hop distance on unit graphs") {
  for (const auto& item : testcorpus::small_corpus()) {
    if (item.graph.num_vertices() > 100 || !item.graph.has_unit_weights()) continue;
    CAPTURE(item.name);
    const auto r = exact_resistance_matrix(item.graph);
    const auto sp = all_pairs_shortest_paths(item.graph);
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = 0; j < r.size(); ++j) CHECK(r(i, j) <= sp(i, j) + 1e-8);
  }
}

TEST_CASE("adding an edge never increases a resistance") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 6 + rng.index(15);
    const Graph base = generators::random_tree(n, 100 + static_cast<std::uint64_t>(trial), 0.5, 2.0);
    std::vector<Edge> edges(base.edges().begin(), base.edges().end());
    Vertex u = rng.index(n), v = rng.index(n);
    if (u == v) v = (u + 1) % n;
    edges.push_back({u, v, rng.uniform(0.5, 2.0)});
    const auto before = exact_resistance_matrix(base);
    const auto after = exact_resistance_matrix(Graph(n, edges));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) CHECK(after(i, j) <= before(i, j) + 1e-10);
  }
}
