#include "omega/layout.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "omega/error.hpp"
#include "omega/random.hpp"

namespace omega {

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

NodePair make_pair(Vertex i, Vertex j, double delta) {
  const double w = 1.0 / (delta * delta);
  return {std::min(i, j), std::max(i, j), delta, w, w, w};
}

std::uint64_t PairSet::key(Vertex i, Vertex j) {
  return (static_cast<std::uint64_t>(std::min(i, j)) << 32) |
         static_cast<std::uint64_t>(std::max(i, j));
}

bool PairSet::insert(NodePair pair) {
  if (pair.i == pair.j) return false;
  if (pair.i > pair.j) {
    std::swap(pair.i, pair.j);
    std::swap(pair.step_weight_i, pair.step_weight_j);
  }
  if (!index_.insert(key(pair.i, pair.j)).second) return false;
  pairs_.push_back(pair);
  return true;
}

bool PairSet::contains(Vertex i, Vertex j) const { return index_.count(key(i, j)) != 0; }

double stress(const Layout2D& layout, const PairSet& pairs) {
  double s = 0.0;
  for (const NodePair& p : pairs.pairs()) {
    const double diff = distance(layout[p.i], layout[p.j]) - p.delta;
    s += p.weight * diff * diff;
  }
  return s;
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

const SpectralEmbedding& embedding_of(const ResistanceMetric& metric) {
  if (metric.embedding == nullptr) throw InputError("resistance metric requires an embedding");
  return *metric.embedding;
}

double resistance_delta(const ResistanceMetric& metric, Vertex i, Vertex j) {
  return std::max(embedding_distance(embedding_of(metric), i, j), metric.min_distance);
}

// Distances from `source` to every vertex under the metric.
std::vector<double> distances_from(const Graph& g, const DistanceMetric& metric, Vertex source) {
  if (const auto* resistance = std::get_if<ResistanceMetric>(&metric)) {
    std::vector<double> out(g.num_vertices());
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      out[v] = v == source ? 0.0 : resistance_delta(*resistance, source, v);
    }
    return out;
  }
  return shortest_path_distances(g, source).dist;
}

// Fills delta and weights of every pair from the metric.
void assign_ideal_distances(const Graph& g, const DistanceMetric& metric, PairSet& pairs) {
  auto span = pairs.mutable_pairs();
  if (const auto* resistance = std::get_if<ResistanceMetric>(&metric)) {
    for (NodePair& p : span) p = make_pair(p.i, p.j, resistance_delta(*resistance, p.i, p.j));
    return;
  }
  // One single-source search per distinct smaller endpoint.
  std::vector<std::size_t> order(span.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return span[a].i < span[b].i; });
  std::vector<double> row;
  Vertex current = kNoVertex;
  for (std::size_t idx : order) {
    NodePair& p = span[idx];
    if (p.i != current) {
      current = p.i;
      row = shortest_path_distances(g, current).dist;
    }
    if (!std::isfinite(row[p.j])) throw InputError("shortest-path metric: graph is disconnected");
    p = make_pair(p.i, p.j, row[p.j]);
  }
}

PairSet sample_random_structure(const Graph& g, std::size_t h, std::uint64_t seed) {
  PairSet pairs;
  for (const Edge& e : g.edges()) pairs.insert(make_pair(e.u, e.v, 1.0));
  const std::size_t n = g.num_vertices();
  Rng rng(seed);
  for (Vertex i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < h; ++l) {
      const Vertex j = rng.index(n);
      if (j != i && !pairs.contains(i, j)) pairs.insert(make_pair(i, j, 1.0));
    }
  }
  return pairs;
}

struct PivotDistances {
  std::vector<Vertex> pivots;
  std::vector<std::vector<double>> rows;  // rows[k][v] = dist(pivots[k], v)
};

PivotDistances maxmin_pivots(const Graph& g, const DistanceMetric& metric, std::size_t count,
                             Vertex first) {
  const std::size_t n = g.num_vertices();
  PivotDistances out;
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  std::vector<bool> chosen(n, false);
  Vertex next = first;
  while (out.pivots.size() < count) {
    out.pivots.push_back(next);
    chosen[next] = true;
    out.rows.push_back(distances_from(g, metric, next));
    const auto& row = out.rows.back();
    for (Vertex v = 0; v < n; ++v) nearest[v] = std::min(nearest[v], row[v]);
    if (out.pivots.size() == count) break;
    Vertex best = kNoVertex;
    for (Vertex v = 0; v < n; ++v) {
      if (!chosen[v] && (best == kNoVertex || nearest[v] > nearest[best])) best = v;
    }
    next = best;
  }
  return out;
}

}  // namespace

PairSet build_pair_set_random(const Graph& g, const SpectralEmbedding& embedding, std::size_t h,
                              double min_distance, std::uint64_t seed) {
  return build_pair_set_random(g, ResistanceMetric{&embedding, min_distance}, h, seed);
}

PairSet build_pair_set_random(const Graph& g, const DistanceMetric& metric, std::size_t h,
                              std::uint64_t seed) {
  PairSet pairs = sample_random_structure(g, h, seed);
  assign_ideal_distances(g, metric, pairs);
  return pairs;
}

std::vector<Vertex> select_pivots_maxmin(const Graph& g, const DistanceMetric& metric,
                                         std::size_t count, Vertex first) {
  if (first >= g.num_vertices()) throw InputError("first pivot out of range");
  return maxmin_pivots(g, metric, std::min(count, g.num_vertices()), first).pivots;
}

PivotPairSet build_pair_set_pivot(const Graph& g, const DistanceMetric& metric, std::size_t h,
                                  std::uint64_t seed, const PivotOptions& options) {
  const std::size_t n = g.num_vertices();
  PivotPairSet out;
  if (h > n) {
    out.clamped = true;
    h = n;
  }
  for (const Edge& e : g.edges()) out.pairs.insert(make_pair(e.u, e.v, 1.0));
  assign_ideal_distances(g, metric, out.pairs);
  if (h == 0) return out;

  Rng rng(seed);
  const Vertex first = options.first_pivot.value_or(rng.index(n));
  if (first >= n) throw InputError("first pivot out of range");
  PivotDistances piv = maxmin_pivots(g, metric, h, first);
  out.pivots = piv.pivots;
  const std::size_t count = piv.pivots.size();

  std::vector<std::size_t> pivot_slot(n, kNoVertex);
  for (std::size_t k = 0; k < count; ++k) pivot_slot[piv.pivots[k]] = k;

  // Region of each pivot: vertices whose nearest pivot it is (ties: smaller
  // pivot id). region_dist[k] holds the sorted distances to pivot k.
  std::vector<std::vector<double>> region_dist(count);
  for (Vertex v = 0; v < n; ++v) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < count; ++k) {
      const double dk = piv.rows[k][v];
      const double db = piv.rows[best][v];
      if (dk < db || (dk == db && piv.pivots[k] < piv.pivots[best])) best = k;
    }
    region_dist[best].push_back(piv.rows[best][v]);
  }
  for (auto& r : region_dist) std::sort(r.begin(), r.end());
  auto region_count = [&](std::size_t k, double delta) {
    const auto& r = region_dist[k];
    return static_cast<double>(std::upper_bound(r.begin(), r.end(), delta / 2.0) - r.begin());
  };

  for (std::size_t k = 0; k < count; ++k) {
    const Vertex p = piv.pivots[k];
    for (Vertex v = 0; v < n; ++v) {
      if (v == p || out.pairs.contains(v, p)) continue;
      const double delta = piv.rows[k][v];
      NodePair pair = make_pair(v, p, delta);
      if (options.region_weights) {
        // Step weight for the vertex side comes from p's region; the pivot
        // side only moves when v is itself a pivot.
        const double inv = 1.0 / (delta * delta);
        const double w_v = region_count(k, delta) * inv;
        const double w_p = pivot_slot[v] != kNoVertex ? region_count(pivot_slot[v], delta) * inv
                                                      : 0.0;
        pair.step_weight_i = v < p ? w_v : w_p;
        pair.step_weight_j = v < p ? w_p : w_v;
      }
      out.pairs.insert(pair);
    }
  }
  return out;
}

PairSet build_pair_set_all(const Graph& g, const DistanceMetric& metric, std::size_t cap) {
  const std::size_t n = g.num_vertices();
  if (n > cap) {
    throw LimitError("all-pairs set: n = " + std::to_string(n) + " exceeds cap " +
                     std::to_string(cap));
  }
  PairSet pairs;
  for (Vertex i = 0; i < n; ++i) {
    const auto row = distances_from(g, metric, i);
    for (Vertex j = i + 1; j < n; ++j) {
      if (!std::isfinite(row[j])) throw InputError("all-pairs set: graph is disconnected");
      pairs.insert(make_pair(i, j, row[j]));
    }
  }
  return pairs;
}

AnnealingSchedule AnnealingSchedule::geometric(const ScheduleParams& params, double w_min,
                                               double w_max) {
  if (!(params.epsilon > 0.0 && params.epsilon < 1.0)) {
    throw InputError("schedule epsilon must lie in (0, 1)");
  }
  if (!(w_min > 0.0) || w_max < w_min) throw InputError("schedule requires 0 < w_min <= w_max");
  AnnealingSchedule out;
  const std::size_t t_max = params.iterations;
  if (t_max == 0) return out;
  const double tau_first = 1.0 / w_min;
  if (t_max == 1) {
    out.steps_.push_back(tau_first);
    return out;
  }
  const double tau_last = params.epsilon / w_max;
  const double lambda = std::log(tau_first / tau_last) / static_cast<double>(t_max - 1);
  out.steps_.reserve(t_max);
  for (std::size_t t = 0; t < t_max; ++t) {
    out.steps_.push_back(tau_first * std::exp(-lambda * static_cast<double>(t)));
  }
  out.steps_.back() = tau_last;
  return out;
}

AnnealingSchedule AnnealingSchedule::for_pairs(const ScheduleParams& params,
                                               const PairSet& pairs) {
  double w_min = std::numeric_limits<double>::infinity();
  double w_max = 0.0;
  for (const NodePair& p : pairs.pairs()) {
    for (double w : {p.step_weight_i, p.step_weight_j}) {
      if (w > 0.0) {
        w_min = std::min(w_min, w);
        w_max = std::max(w_max, w);
      }
    }
  }
  if (w_max == 0.0) throw InputError("schedule requires a non-empty pair set");
  return geometric(params, w_min, w_max);
}

Layout2D sgd_optimize(Layout2D layout, const PairSet& pairs, const AnnealingSchedule& schedule,
                      std::uint64_t seed) {
  if (schedule.size() == 0) return layout;
  const auto terms = pairs.pairs();
  for (const NodePair& p : terms) {
    if (p.i >= layout.size() || p.j >= layout.size()) {
      throw InputError("sgd_optimize: pair references a vertex outside the layout");
    }
  }
  Rng order_rng(derive_seed(seed, 0));
  Rng direction_rng(derive_seed(seed, 1));
  std::vector<std::size_t> order(terms.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  for (const double tau : schedule.steps()) {
    order_rng.shuffle(order.begin(), order.end());
    for (const std::size_t idx : order) {
      const NodePair& p = terms[idx];
      Point& a = layout[p.i];
      Point& b = layout[p.j];
      double ux = a.x - b.x;
      double uy = a.y - b.y;
      double mag = std::hypot(ux, uy);
      if (mag < 1e-12) {
        const double angle = 2.0 * std::numbers::pi * direction_rng.uniform();
        ux = std::cos(angle);
        uy = std::sin(angle);
        mag = 0.0;
      } else {
        ux /= mag;
        uy /= mag;
      }
      const double half = (mag - p.delta) / 2.0;
      const double mu_i = std::min(1.0, p.step_weight_i * tau);
      const double mu_j = std::min(1.0, p.step_weight_j * tau);
      a.x -= mu_i * half * ux;
      a.y -= mu_i * half * uy;
      b.x += mu_j * half * ux;
      b.y += mu_j * half * uy;
    }
  }
  return layout;
}

Layout2D random_layout(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Layout2D out(n);
  for (Point& p : out.points) {
    p.x = rng.uniform();
    p.y = rng.uniform();
  }
  return out;
}

Layout2D spectral_layout(const SpectralEmbedding& embedding) {
  if (embedding.dimension() < 2) throw InputError("spectral layout needs embedding dimension >= 2");
  Layout2D out(embedding.num_vertices());
  for (Vertex i = 0; i < out.size(); ++i) {
    out[i] = {embedding.coordinate(i, 0), embedding.coordinate(i, 1)};
  }
  return out;
}

OmegaResult omega_layout(const Graph& g, const OmegaParams& params) {
  if (params.rdmds.dimension < 2) throw InputError("omega: embedding dimension must be >= 2");
  if (!(params.min_distance > 0.0)) throw InputError("omega: min distance must be positive");
  OmegaResult out;
  auto start = Clock::now();
  out.embedding = compute_embedding(g, params.rdmds);
  out.embedding_ms = elapsed_ms(start);

  start = Clock::now();
  out.pairs = build_pair_set_random(g, out.embedding, params.samples_per_vertex,
                                    params.min_distance, derive_seed(params.seed, 10));
  out.pairs_ms = elapsed_ms(start);

  out.initial_layout = spectral_layout(out.embedding);
  start = Clock::now();
  if (params.schedule.iterations == 0) {
    out.layout = out.initial_layout;
  } else {
    const auto schedule = AnnealingSchedule::for_pairs(params.schedule, out.pairs);
    out.layout = sgd_optimize(out.initial_layout, out.pairs, schedule, derive_seed(params.seed, 11));
  }
  out.sgd_ms = elapsed_ms(start);
  return out;
}

Layout2D initial_layout(const Graph& g, const DistanceMetric& metric, std::uint64_t seed,
                        InitMode init) {
  if (init == InitMode::ByMetric) {
    if (const auto* resistance = std::get_if<ResistanceMetric>(&metric)) {
      return spectral_layout(embedding_of(*resistance));
    }
  }
  return random_layout(g.num_vertices(), derive_seed(seed, 12));
}

Layout2D full_sgd_layout(const Graph& g, const DistanceMetric& metric,
                         const ScheduleParams& schedule, std::uint64_t seed, InitMode init,
                         std::size_t cap) {
  const PairSet pairs = build_pair_set_all(g, metric, cap);
  Layout2D start = initial_layout(g, metric, seed, init);
  if (schedule.iterations == 0 || pairs.empty()) return start;
  return sgd_optimize(std::move(start), pairs, AnnealingSchedule::for_pairs(schedule, pairs),
                      derive_seed(seed, 13));
}

MajorizationResult stress_majorization(Layout2D layout, const PairSet& pairs,
                                       const MajorizationParams& params) {
  const std::size_t n = layout.size();
  // Incident pair indices per vertex.
  std::vector<std::size_t> offsets(n + 1, 0);
  for (const NodePair& p : pairs.pairs()) {
    if (p.i >= n || p.j >= n) {
      throw InputError("stress_majorization: pair references a vertex outside the layout");
    }
    ++offsets[p.i + 1];
    ++offsets[p.j + 1];
  }
  for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
  std::vector<std::size_t> incident(offsets[n]);
  {
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    const auto terms = pairs.pairs();
    for (std::size_t k = 0; k < terms.size(); ++k) {
      incident[cursor[terms[k].i]++] = k;
      incident[cursor[terms[k].j]++] = k;
    }
  }

  MajorizationResult out;
  double current = stress(layout, pairs);
  out.stress_history.push_back(current);
  const auto terms = pairs.pairs();
  for (std::size_t iter = 0; iter < params.max_iterations && current > 0.0; ++iter) {
    for (std::size_t sweep = 0; sweep < params.sweeps; ++sweep) {
      for (Vertex v = 0; v < n; ++v) {
        double num_x = 0.0, num_y = 0.0, den = 0.0;
        const Point here = layout[v];
        for (std::size_t k = offsets[v]; k < offsets[v + 1]; ++k) {
          const NodePair& p = terms[incident[k]];
          const Point& other = layout[p.i == v ? p.j : p.i];
          const double dist = distance(here, other);
          num_x += p.weight * other.x;
          num_y += p.weight * other.y;
          if (dist > 0.0) {
            const double scale = p.weight * p.delta / dist;
            num_x += scale * (here.x - other.x);
            num_y += scale * (here.y - other.y);
          }
          den += p.weight;
        }
        if (den > 0.0) layout[v] = {num_x / den, num_y / den};
      }
    }
    const double next = stress(layout, pairs);
    out.stress_history.push_back(next);
    ++out.iterations;
    const double decrease = current - next;
    current = next;
    if (decrease < params.tolerance * out.stress_history[out.stress_history.size() - 2]) break;
  }
  out.layout = std::move(layout);
  return out;
}

}  // namespace omega
