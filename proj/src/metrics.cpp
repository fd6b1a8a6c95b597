#include "omega/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>

#include "omega/distances.hpp"
#include "omega/error.hpp"
#include "omega/random.hpp"

namespace omega {

ClusterAssignment ClusterAssignment::from_labels(std::span<const std::size_t> raw) {
  ClusterAssignment out;
  out.labels.resize(raw.size());
  std::unordered_map<std::size_t, std::size_t> remap;
  for (std::size_t v = 0; v < raw.size(); ++v) {
    const auto [it, inserted] = remap.try_emplace(raw[v], remap.size());
    out.labels[v] = it->second;
  }
  out.k = remap.size();
  return out;
}

double stress_ratio(double achieved, double reference) {
  if (!(reference > 0.0)) throw InputError("stress_ratio: reference stress must be positive");
  return achieved / reference;
}

namespace {

// Indices of the k smallest entries of `dist` (excluding `self`), ordered by
// (distance, id).
std::vector<Vertex> k_nearest(std::span<const double> dist, Vertex self, std::size_t k) {
  std::vector<Vertex> ids;
  ids.reserve(dist.size() - 1);
  for (Vertex v = 0; v < dist.size(); ++v) {
    if (v != self) ids.push_back(v);
  }
  auto less = [&](Vertex a, Vertex b) {
    return dist[a] != dist[b] ? dist[a] < dist[b] : a < b;
  };
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(k), ids.end(), less);
  ids.resize(k);
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

double neighborhood_preservation(const Graph& g, const Layout2D& layout, std::size_t k) {
  const std::size_t n = g.num_vertices();
  if (layout.size() != n) throw InputError("neighborhood_preservation: layout size mismatch");
  if (k == 0 || k >= n) throw InputError("neighborhood_preservation: k must satisfy 1 <= k < n");
  double total = 0.0;
  std::vector<double> euclid(n);
  for (Vertex v = 0; v < n; ++v) {
    const auto graph_dist = shortest_path_distances(g, v).dist;
    for (Vertex u = 0; u < n; ++u) euclid[u] = distance(layout[v], layout[u]);
    const auto a = k_nearest(graph_dist, v, k);
    const auto b = k_nearest(euclid, v, k);
    std::vector<Vertex> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    const double inter = static_cast<double>(common.size());
    total += inter / (2.0 * static_cast<double>(k) - inter);
  }
  return total / static_cast<double>(n);
}

double modularity(const Graph& g, std::span<const std::size_t> labels) {
  if (labels.size() != g.num_vertices()) throw InputError("modularity: label count mismatch");
  double two_w = 0.0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) two_w += g.weighted_degree(v);
  if (two_w == 0.0) return 0.0;
  std::map<std::size_t, double> internal;
  std::map<std::size_t, double> degree;
  for (const Edge& e : g.edges()) {
    if (labels[e.u] == labels[e.v]) internal[labels[e.u]] += 2.0 * e.weight;
  }
  for (Vertex v = 0; v < g.num_vertices(); ++v) degree[labels[v]] += g.weighted_degree(v);
  double q = 0.0;
  for (const auto& [c, deg] : degree) {
    const double frac = deg / two_w;
    q += internal[c] / two_w - frac * frac;
  }
  return q;
}

ClusterAssignment greedy_modularity(const Graph& g) {
  const std::size_t n = g.num_vertices();
  double two_w = 0.0;
  for (Vertex v = 0; v < n; ++v) two_w += g.weighted_degree(v);

  // Gains are kept in the scaled unit  dQ * (2W)^2 / 2 = w_cd * 2W - deg_c * deg_d,
  // which is exact for integer weights.
  std::vector<std::map<std::size_t, double>> between(n);  // raw weight between communities
  std::vector<double> degree(n);
  std::vector<std::size_t> community(n);
  std::vector<std::vector<Vertex>> members(n);
  for (Vertex v = 0; v < n; ++v) {
    degree[v] = g.weighted_degree(v);
    community[v] = v;
    members[v] = {v};
  }
  for (const Edge& e : g.edges()) {
    between[e.u][e.v] += e.weight;
    between[e.v][e.u] += e.weight;
  }
  auto gain = [&](std::size_t c, std::size_t d) {
    return between[c].at(d) * two_w - degree[c] * degree[d];
  };

  // Best merge per community, ordered by (-gain, lo, hi).
  using Candidate = std::tuple<double, std::size_t, std::size_t>;
  std::vector<std::optional<Candidate>> best(n);
  std::set<Candidate> queue;
  auto refresh = [&](std::size_t c) {
    if (best[c]) queue.erase(*best[c]);
    best[c].reset();
    for (const auto& [d, w] : between[c]) {
      const Candidate cand{-gain(c, d), std::min(c, d), std::max(c, d)};
      if (!best[c] || cand < *best[c]) best[c] = cand;
    }
    if (best[c]) queue.insert(*best[c]);
  };
  for (std::size_t c = 0; c < n; ++c) refresh(c);

  while (!queue.empty()) {
    const auto [neg_gain, keep, drop] = *queue.begin();
    if (!(-neg_gain > 0.0)) break;

    for (const auto& [x, w] : between[drop]) {
      if (x == keep) continue;
      between[keep][x] += w;
      between[x][keep] += w;
      between[x].erase(drop);
    }
    between[keep].erase(drop);
    between[drop].clear();
    degree[keep] += degree[drop];
    if (best[drop]) queue.erase(*best[drop]);
    best[drop].reset();
    for (Vertex v : members[drop]) community[v] = keep;
    members[keep].insert(members[keep].end(), members[drop].begin(), members[drop].end());
    members[drop].clear();
    refresh(keep);
    for (const auto& [x, w] : between[keep]) refresh(x);
  }
  return ClusterAssignment::from_labels(community);
}

ClusterAssignment agglomerative_layout_clustering(const Layout2D& layout, std::size_t k,
                                                  Linkage linkage) {
  const std::size_t n = layout.size();
  if (k == 0 || k > n) throw InputError("agglomerative clustering: k must satisfy 1 <= k <= n");
  if (n > 20000) throw LimitError("agglomerative clustering: n exceeds dense cap 20000");

  std::vector<double> d(n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double dx = layout[a].x - layout[b].x;
      const double dy = layout[a].y - layout[b].y;
      d[a * n + b] = d[b * n + a] = dx * dx + dy * dy;
    }
  }
  std::vector<bool> active(n, true);
  std::vector<double> size(n, 1.0);
  std::vector<std::size_t> cluster(n);
  std::vector<std::vector<std::size_t>> members(n);
  for (std::size_t v = 0; v < n; ++v) {
    cluster[v] = v;
    members[v] = {v};
  }
  std::vector<std::size_t> nn(n, kNoVertex);
  auto recompute = [&](std::size_t a) {
    nn[a] = kNoVertex;
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a || !active[b]) continue;
      if (nn[a] == kNoVertex || d[a * n + b] < d[a * n + nn[a]]) nn[a] = b;
    }
  };
  for (std::size_t a = 0; a < n; ++a) recompute(a);

  for (std::size_t remaining = n; remaining > k; --remaining) {
    std::size_t lo = kNoVertex, hi = kNoVertex;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < n; ++a) {
      if (!active[a] || nn[a] == kNoVertex) continue;
      const std::size_t x = std::min(a, nn[a]);
      const std::size_t y = std::max(a, nn[a]);
      const double dist = d[a * n + nn[a]];
      if (dist < best || (dist == best && std::pair(x, y) < std::pair(lo, hi))) {
        best = dist;
        lo = x;
        hi = y;
      }
    }
    // Lance-Williams update of distances to the merged cluster `lo`.
    for (std::size_t c = 0; c < n; ++c) {
      if (!active[c] || c == lo || c == hi) continue;
      const double d_lo = d[c * n + lo];
      const double d_hi = d[c * n + hi];
      double merged = 0.0;
      switch (linkage) {
        case Linkage::Ward:
          merged = ((size[lo] + size[c]) * d_lo + (size[hi] + size[c]) * d_hi -
                    size[c] * d[lo * n + hi]) /
                   (size[lo] + size[hi] + size[c]);
          break;
        case Linkage::Single:
          merged = std::min(d_lo, d_hi);
          break;
        case Linkage::Complete:
          merged = std::max(d_lo, d_hi);
          break;
      }
      d[c * n + lo] = d[lo * n + c] = merged;
    }
    active[hi] = false;
    size[lo] += size[hi];
    for (std::size_t v : members[hi]) cluster[v] = lo;
    members[lo].insert(members[lo].end(), members[hi].begin(), members[hi].end());
    members[hi].clear();

    recompute(lo);
    for (std::size_t c = 0; c < n; ++c) {
      if (!active[c] || c == lo) continue;
      if (nn[c] == lo || nn[c] == hi) {
        recompute(c);
      } else if (d[c * n + lo] < d[c * n + nn[c]] ||
                 (d[c * n + lo] == d[c * n + nn[c]] && lo < nn[c])) {
        nn[c] = lo;
      }
    }
  }
  return ClusterAssignment::from_labels(cluster);
}

double fowlkes_mallows(const ClusterAssignment& a, const ClusterAssignment& b) {
  if (a.labels.size() != b.labels.size()) throw InputError("fowlkes_mallows: length mismatch");
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> joint;
  std::map<std::size_t, std::uint64_t> count_a;
  std::map<std::size_t, std::uint64_t> count_b;
  for (std::size_t v = 0; v < a.labels.size(); ++v) {
    ++joint[{a.labels[v], b.labels[v]}];
    ++count_a[a.labels[v]];
    ++count_b[b.labels[v]];
  }
  auto pairs = [](std::uint64_t c) { return c * (c - (c > 0 ? 1 : 0)) / 2; };
  std::uint64_t tp = 0, same_a = 0, same_b = 0;
  for (const auto& [key, c] : joint) tp += pairs(c);
  for (const auto& [key, c] : count_a) same_a += pairs(c);
  for (const auto& [key, c] : count_b) same_b += pairs(c);
  if (same_a == 0 || same_b == 0) return 0.0;
  return static_cast<double>(tp) /
         std::sqrt(static_cast<double>(same_a) * static_cast<double>(same_b));
}

double clustering_quality(const Graph& g, const Layout2D& layout, Linkage linkage) {
  const ClusterAssignment truth = greedy_modularity(g);
  const ClusterAssignment found = agglomerative_layout_clustering(layout, truth.k, linkage);
  return fowlkes_mallows(truth, found);
}

ReferenceOptimum reference_optimum(const Graph& g, const DistanceMetric& metric,
                                   std::uint64_t seed, const ReferenceParams& params) {
  const PairSet pairs = build_pair_set_all(g, metric);
  ReferenceOptimum out;
  Layout2D start = initial_layout(g, metric, seed, params.init);
  if (!pairs.empty() && params.sgd_iterations > 0) {
    const auto schedule =
        AnnealingSchedule::for_pairs({params.sgd_iterations, params.epsilon}, pairs);
    start = sgd_optimize(std::move(start), pairs, schedule, derive_seed(seed, 20));
  }
  auto refined = stress_majorization(std::move(start), pairs, params.majorization);
  out.layout = std::move(refined.layout);
  out.stress = stress(out.layout, pairs);
  return out;
}

}  // namespace omega
