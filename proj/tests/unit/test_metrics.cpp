#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "../oracles.hpp"
#include "omega/error.hpp"
#include "omega/generators.hpp"
#include "omega/layout.hpp"
#include "omega/metrics.hpp"
#include "omega/random.hpp"
#include "omega/rdmds.hpp"

using namespace omega;

namespace {

ClusterAssignment labels(std::vector<std::size_t> raw) { return ClusterAssignment::from_labels(raw); }

Layout2D line(std::size_t n, double step = 1.0) {
  Layout2D y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = {step * static_cast<double>(i), 0.0};
  return y;
}

}  // namespace

TEST_CASE("stress_ratio") {
  CHECK(stress_ratio(2.0, 2.0) == 1.0);
  CHECK(stress_ratio(3.0, 2.0) == 1.5);
  CHECK(stress_ratio(0.0, 2.0) == 0.0);
  CHECK_THROWS_AS(stress_ratio(1.0, 0.0), InputError);
}

TEST_CASE("ClusterAssignment relabels by first appearance") {
  const auto a = labels({7, 3, 7, 9});
  CHECK(a.labels == std::vector<std::size_t>{0, 1, 0, 2});
  CHECK(a.k == 3);
}

TEST_CASE("fowlkes_mallows") {
  CHECK(fowlkes_mallows(labels({0, 0, 1, 1}), labels({5, 5, 2, 2})) == 1.0);
  CHECK(fowlkes_mallows(labels({0, 0, 1}), labels({0, 1, 1})) == 0.0);
  CHECK(fowlkes_mallows(labels({0, 1, 2, 3}), labels({0, 0, 0, 0})) == 0.0);
  CHECK_THROWS_AS(fowlkes_mallows(labels({0, 0}), labels({0, 0, 1})), InputError);

  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.index(12);
    std::vector<std::size_t> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = rng.index(4), b[i] = rng.index(3);
    const double fm = fowlkes_mallows(labels(a), labels(b));
    CHECK(fm == doctest::Approx(oracle::fowlkes_mallows(a, b)).epsilon(1e-15));
    CHECK(fm == fowlkes_mallows(labels(b), labels(a)));
    CHECK(fm >= 0.0);
    CHECK(fm <= 1.0);
  }
}

TEST_CASE("neighborhood_preservation") {
  const Graph p6 = generators::path(6);
  CHECK(neighborhood_preservation(p6, line(6, 2.5), 2) == 1.0);

  const Graph p4 = generators::path(4);
  const Layout2D reversed = Layout2D({{3, 0}, {2, 0}, {1, 0}, {0, 0}});
  CHECK(neighborhood_preservation(p4, reversed, 1) == oracle::neighborhood_preservation(p4, reversed, 1));

  const Graph g = generators::random_partition(2, 8, 0.5, 0.1, 5);
  const Layout2D y = random_layout(g.num_vertices(), 6);
  CHECK(neighborhood_preservation(g, y, g.num_vertices() - 1) == 1.0);
  for (std::size_t k = 1; k < g.num_vertices(); ++k) {
    const double v = neighborhood_preservation(g, y, k);
    CHECK(v == doctest::Approx(oracle::neighborhood_preservation(g, y, k)).epsilon(1e-15));
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  CHECK_THROWS_AS(neighborhood_preservation(p4, reversed, 4), InputError);
  CHECK_THROWS_AS(neighborhood_preservation(p4, reversed, 0), InputError);
}

TEST_CASE("greedy_modularity examples") {
  std::vector<Edge> barbell{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}};
  const Graph two_triangles(6, barbell);
  const auto c = greedy_modularity(two_triangles);
  CHECK(c.k == 2);
  CHECK(oracle::same_partition(c.labels, {0, 0, 0, 1, 1, 1}));
  CHECK(oracle::scaled_modularity(two_triangles, c.labels) == oracle::max_modularity(two_triangles));

  CHECK(greedy_modularity(generators::complete(4)).k == 1);

  const Graph planted = generators::random_partition(3, 10, 0.9, 0.01, 12);
  const auto found = greedy_modularity(planted);
  CHECK(oracle::same_partition(found.labels, generators::planted_labels(3, 10)));
}

TEST_CASE("greedy_modularity matches the naive greedy oracle") {
  Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 4 + rng.index(9);
    const Graph g = generators::random_partition(1, n, 0.45, 0.0, 300 + static_cast<std::uint64_t>(trial));
    CHECK(oracle::same_partition(greedy_modularity(g).labels, oracle::greedy_modularity(g)));
    const auto labels_ = greedy_modularity(g).labels;
    CHECK(modularity(g, labels_) == doctest::Approx(oracle::plain_modularity(g, labels_)));
  }
}

TEST_CASE("greedy_modularity recovers planted partitions") {
  std::vector<double> scores;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = generators::random_partition(4, 25, 0.6, 0.005, seed);
    scores.push_back(fowlkes_mallows(greedy_modularity(g), labels(generators::planted_labels(4, 25))));
  }
  std::sort(scores.begin(), scores.end());
  CHECK((scores[4] + scores[5]) / 2.0 >= 0.95);
}

TEST_CASE("agglomerative_layout_clustering") {
  const Layout2D y({{0, 0}, {0.1, 0}, {0, 0.1}, {10, 10}, {10.1, 10}, {10, 10.2}, {0.05, 0.05}});
  for (Linkage link : {Linkage::Ward, Linkage::Single, Linkage::Complete}) {
    CHECK(agglomerative_layout_clustering(y, 7, link).k == 7);
    const auto one = agglomerative_layout_clustering(y, 1, link);
    CHECK(one.k == 1);
    const auto two = agglomerative_layout_clustering(y, 2, link);
    CHECK(oracle::same_partition(two.labels, {0, 0, 0, 1, 1, 1, 0}));
  }
  CHECK_THROWS_AS(agglomerative_layout_clustering(y, 0), InputError);
  CHECK_THROWS_AS(agglomerative_layout_clustering(y, 8), InputError);

  // Ward with k = 2 minimizes within-cluster variance over all 2-splits of
  // well separated clouds.
  Rng rng(4);
  Layout2D clouds(12);
  for (std::size_t i = 0; i < 12; ++i) {
    const double base = i < 5 ? 0.0 : 50.0;
    clouds[i] = {base + rng.uniform(), rng.uniform()};
  }
  const auto ward = agglomerative_layout_clustering(clouds, 2);
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_labels;
  for (std::uint32_t mask = 1; mask < (1u << 11); ++mask) {
    std::vector<std::size_t> lab(12, 0);
    for (std::size_t i = 0; i < 11; ++i) lab[i + 1] = (mask >> i) & 1u;
    double cost = 0.0;
    for (std::size_t c = 0; c < 2; ++c) {
      double sx = 0, sy = 0, cnt = 0;
      for (std::size_t i = 0; i < 12; ++i)
        if (lab[i] == c) sx += clouds[i].x, sy += clouds[i].y, cnt += 1;
      if (cnt == 0) { cost = std::numeric_limits<double>::infinity(); break; }
      for (std::size_t i = 0; i < 12; ++i)
        if (lab[i] == c) cost += std::pow(clouds[i].x - sx / cnt, 2) + std::pow(clouds[i].y - sy / cnt, 2);
    }
    if (cost < best) best = cost, best_labels = lab;
  }
  CHECK(oracle::same_partition(ward.labels, best_labels));
}

TEST_CASE("clustering quality pipeline is deterministic") {
  const Graph g = generators::random_partition(4, 12, 0.5, 0.02, 8);
  const DistanceMetric sp{ShortestPathMetric{}};
  const auto a = full_sgd_layout(g, sp, {}, 4);
  const auto b = full_sgd_layout(g, sp, {}, 4);
  CHECK(clustering_quality(g, a) == clustering_quality(g, b));
  const double q = clustering_quality(g, a);
  CHECK(q >= 0.0);
  CHECK(q <= 1.0);
}

TEST_CASE("reference_optimum") {
  const DistanceMetric sp{ShortestPathMetric{}};
  CHECK(reference_optimum(generators::path(2), sp, 1).stress == doctest::Approx(0.0));

  std::vector<double> values;
  for (std::uint64_t seed = 0; seed < 5; ++seed) values.push_back(reference_optimum(generators::path(4), sp, seed).stress);
  // The optimum is a straight line with stress 0, so "within 1%" only makes
  // sense against an absolute floor.
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  CHECK(*hi <= 1.01 * *lo + 1e-6);

  const Graph k4 = generators::complete(4);
  RdmdsParams rp;
  rp.dimension = 3;
  rp.eig_tolerance = 1e-13;
  rp.max_eig_iterations = 3000;
  rp.pcg = {1e-9, 1000};
  const auto e = compute_embedding(k4, rp);
  const DistanceMetric res{ResistanceMetric{&e, 0.01}};
  const auto pairs = build_pair_set_all(k4, res);
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto m = stress_majorization(random_layout(4, 100 + seed), pairs, {1e-12, 10000, 1});
    best = std::min(best, m.stress_history.back());
  }
  const auto ref = reference_optimum(k4, res, 7);
  CHECK(ref.stress <= 1.01 * best + 1e-12);
  CHECK(ref.stress == doctest::Approx(stress(ref.layout, pairs)));
}
