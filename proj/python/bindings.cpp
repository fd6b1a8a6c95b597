// Python bindings: graphs in, numpy arrays out.
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "omega/distances.hpp"
#include "omega/error.hpp"
#include "omega/generators.hpp"
#include "omega/io.hpp"
#include "omega/layout.hpp"
#include "omega/metrics.hpp"
#include "omega/rdmds.hpp"
#include "omega/run.hpp"
#include "omega/svg.hpp"

namespace py = pybind11;
using namespace omega;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;
using IndexArray = py::array_t<std::int64_t, py::array::c_style | py::array::forcecast>;

Array to_array(const Layout2D& y) {
  Array out({static_cast<py::ssize_t>(y.size()), py::ssize_t{2}});
  auto v = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < y.size(); ++i) {
    v(i, 0) = y[i].x;
    v(i, 1) = y[i].y;
  }
  return out;
}

Layout2D to_layout(const Array& a, std::size_t n) {
  if (a.ndim() != 2 || a.shape(1) != 2 || static_cast<std::size_t>(a.shape(0)) != n) {
    throw InputError("layout must have shape (n, 2)");
  }
  auto v = a.unchecked<2>();
  Layout2D y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = {v(i, 0), v(i, 1)};
  return y;
}

Array to_array(const DenseMatrix& m) {
  const auto n = static_cast<py::ssize_t>(m.size());
  Array out({n, n});
  std::copy(m.row(0).data(), m.row(0).data() + m.size() * m.size(), out.mutable_data());
  return out;
}

template <class T, class Src>
py::array_t<T> vector_array(const Src& values) {
  py::array_t<T> out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(values.size())});
  auto v = out.template mutable_unchecked<1>();
  for (std::size_t i = 0; i < values.size(); ++i) v(static_cast<py::ssize_t>(i)) = static_cast<T>(values[i]);
  return out;
}

py::array_t<std::int64_t> to_array(const std::vector<std::size_t>& labels) {
  return vector_array<std::int64_t>(labels);
}

std::vector<std::size_t> to_labels(const IndexArray& a) {
  std::vector<std::size_t> out(static_cast<std::size_t>(a.size()));
  const auto* p = a.data();
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (p[i] < 0) throw InputError("labels must be non-negative");
    out[i] = static_cast<std::size_t>(p[i]);
  }
  return out;
}

Graph make_graph(std::size_t n, const IndexArray& edges, std::optional<Array> weights) {
  if (edges.ndim() != 2 || edges.shape(1) != 2) throw InputError("edges must have shape (m, 2)");
  const auto m = static_cast<std::size_t>(edges.shape(0));
  if (weights && static_cast<std::size_t>(weights->size()) != m) {
    throw InputError("weights must have one entry per edge");
  }
  auto e = edges.unchecked<2>();
  std::vector<Edge> list;
  list.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    if (e(k, 0) < 0 || e(k, 1) < 0) throw InputError("negative vertex id in edge " + std::to_string(k));
    list.push_back({static_cast<Vertex>(e(k, 0)), static_cast<Vertex>(e(k, 1)),
                    weights ? weights->data()[k] : 1.0});
  }
  return Graph(n, list);
}

RdmdsParams rdmds(std::size_t dimension, double shift, double eig_tolerance, std::size_t max_eig_iterations,
                  double cg_tolerance, std::size_t max_cg_iterations, std::uint64_t seed) {
  RdmdsParams p;
  p.dimension = dimension;
  p.shift = shift;
  p.eig_tolerance = eig_tolerance;
  p.max_eig_iterations = max_eig_iterations;
  p.pcg = {cg_tolerance, max_cg_iterations};
  p.seed = seed;
  return p;
}

Array embedding_coordinates(const SpectralEmbedding& e) {
  Array out({static_cast<py::ssize_t>(e.num_vertices()), static_cast<py::ssize_t>(e.dimension())});
  auto v = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < e.num_vertices(); ++i)
    for (std::size_t k = 0; k < e.dimension(); ++k) v(i, k) = e.coordinate(i, k);
  return out;
}

Array embedding_vectors(const SpectralEmbedding& e) {
  Array out({static_cast<py::ssize_t>(e.num_vertices()), static_cast<py::ssize_t>(e.dimension())});
  auto v = out.mutable_unchecked<2>();
  for (std::size_t k = 0; k < e.dimension(); ++k) {
    const auto u = e.eigenvector(k);
    for (std::size_t i = 0; i < e.num_vertices(); ++i) v(i, k) = u[i];
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Resistance-distance graph layout (RDMDS + Omega)";

  auto input_error = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<LimitError>(m, "LimitError", PyExc_RuntimeError);
  (void)input_error;

  py::class_<Graph>(m, "Graph")
      .def(py::init(&make_graph), py::arg("n"), py::arg("edges"), py::arg("weights") = py::none(),
           "Undirected graph on vertices 0..n-1 from an (m, 2) edge array. Parallel edges\n"
           "merge by summing weights; self-loops are dropped.")
      .def_property_readonly("num_vertices", &Graph::num_vertices)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def_property_readonly("is_connected", &Graph::is_connected)
      .def_property_readonly("edges",
                             [](const Graph& g) {
                               IndexArray out({static_cast<py::ssize_t>(g.num_edges()), py::ssize_t{2}});
                               auto v = out.mutable_unchecked<2>();
                               for (std::size_t k = 0; k < g.num_edges(); ++k) {
                                 v(k, 0) = static_cast<std::int64_t>(g.edges()[k].u);
                                 v(k, 1) = static_cast<std::int64_t>(g.edges()[k].v);
                               }
                               return out;
                             })
      .def_property_readonly("weights",
                             [](const Graph& g) {
                               std::vector<double> w;
                               for (const auto& e : g.edges()) w.push_back(e.weight);
                               return vector_array<double>(w);
                             })
      .def("__repr__", [](const Graph& g) {
        return "<Graph n=" + std::to_string(g.num_vertices()) + " m=" + std::to_string(g.num_edges()) + ">";
      });

  m.def("largest_component", [](const Graph& g) {
    auto lcc = largest_connected_component(g);
    return py::make_tuple(std::move(lcc.graph), vector_array<std::int64_t>(lcc.new_to_old));
  }, py::arg("graph"), "Largest connected component and its new -> old vertex map.");

  m.def("load_graph", [](const std::string& path) {
    auto loaded = load_graph(path);
    return py::make_tuple(std::move(loaded.graph), loaded.labels, loaded.notices);
  }, py::arg("path"), "Reads .mtx or an edge list; returns (graph, labels, notices).");
  m.def("generate", [](const std::string& spec) { return generate_from_spec(spec).graph; }, py::arg("spec"),
        "Generator spec such as 'grid:10,10' or 'random_partition:15,100,0.05,0.0002,7'.");

  auto gen = m.def_submodule("generators");
  gen.def("path", &generators::path, py::arg("n"));
  gen.def("cycle", &generators::cycle, py::arg("n"));
  gen.def("complete", &generators::complete, py::arg("n"));
  gen.def("grid", &generators::grid, py::arg("rows"), py::arg("cols"));
  gen.def("binomial_tree", &generators::binomial_tree, py::arg("order"));
  gen.def("random_tree", &generators::random_tree, py::arg("n"), py::arg("seed"), py::arg("min_weight") = 1.0,
          py::arg("max_weight") = 1.0);
  gen.def("random_partition", &generators::random_partition, py::arg("clusters"), py::arg("cluster_size"),
          py::arg("p_in"), py::arg("p_out"), py::arg("seed"), py::arg("max_attempts") = 100);
  gen.def("planted_labels",
          [](std::size_t clusters, std::size_t size) { return to_array(generators::planted_labels(clusters, size)); },
          py::arg("clusters"), py::arg("cluster_size"));

  py::class_<SpectralEmbedding>(m, "SpectralEmbedding")
      .def_property_readonly("dimension", &SpectralEmbedding::dimension)
      .def_property_readonly("eigenvalues",
                             [](const SpectralEmbedding& e) { return vector_array<double>(e.eigenvalues()); })
      .def_property_readonly("eigenvectors", &embedding_vectors, "(n, d) unit eigenvectors as columns.")
      .def_property_readonly("coordinates", &embedding_coordinates, "(n, d) rows u_k / sqrt(lambda_k).")
      .def_property_readonly("cg_iterations", [](const SpectralEmbedding& e) { return e.stats().cg_iterations; })
      .def_property_readonly("converged", [](const SpectralEmbedding& e) { return e.stats().converged; })
      .def("distance", &embedding_distance, py::arg("i"), py::arg("j"))
      .def("resistance", &low_rank_resistance, py::arg("i"), py::arg("j"));

  m.def("compute_embedding", [](const Graph& g, std::size_t dimension, double shift, double eig_tolerance,
                                std::size_t max_eig_iterations, double cg_tolerance, std::size_t max_cg_iterations,
                                std::uint64_t seed) {
    const auto p = rdmds(dimension, shift, eig_tolerance, max_eig_iterations, cg_tolerance, max_cg_iterations, seed);
    py::gil_scoped_release release;
    return compute_embedding(g, p);
  }, py::arg("graph"), py::arg("dimension") = 10, py::arg("shift") = 1e-6, py::arg("eig_tolerance") = 1e-5,
     py::arg("max_eig_iterations") = 100, py::arg("cg_tolerance") = 0.1, py::arg("max_cg_iterations") = 100,
     py::arg("seed") = 0);

  m.def("exact_resistance", [](const Graph& g) { return to_array(exact_resistance_matrix(g)); }, py::arg("graph"),
        "Dense n x n effective resistances (testing oracle, n <= 2000).");
  m.def("shortest_paths", [](const Graph& g) { return to_array(all_pairs_shortest_paths(g)); }, py::arg("graph"));

  m.def("layout", [](const Graph& g, const std::string& algorithm, const std::string& metric, std::size_t dimension,
                     std::size_t samples_per_vertex, double min_distance, std::size_t iterations, double epsilon,
                     double shift, double eig_tolerance, std::size_t max_eig_iterations, double cg_tolerance,
                     std::size_t max_cg_iterations, std::uint64_t seed) {
    RunConfig c;
    c.input = "<python>";
    c.algorithm = parse_algorithm(algorithm);
    c.metric = parse_metric(metric);
    c.dimension = dimension;
    c.samples_per_vertex = samples_per_vertex;
    c.min_distance = min_distance;
    c.iterations = iterations;
    c.epsilon = epsilon;
    c.shift = shift;
    c.eig_tolerance = eig_tolerance;
    c.max_eig_iterations = max_eig_iterations;
    c.cg_tolerance = cg_tolerance;
    c.max_cg_iterations = max_cg_iterations;
    c.seed = seed;
    LoadedGraph input{g, {}, {}};
    for (std::size_t i = 0; i < g.num_vertices(); ++i) input.labels.push_back(std::to_string(i));
    RunResult r;
    {
      py::gil_scoped_release release;
      r = run(c, std::move(input));
    }
    py::dict info;
    info["metadata"] = py::module_::import("json").attr("loads")(run_metadata(c, r).dump());
    if (r.embedding) info["embedding"] = *r.embedding;
    return py::make_tuple(to_array(r.layout), info);
  }, py::arg("graph"), py::kw_only(), py::arg("algorithm") = "omega", py::arg("metric") = "auto",
     py::arg("dimension") = 10, py::arg("samples_per_vertex") = 50, py::arg("min_distance") = 0.01,
     py::arg("iterations") = 15, py::arg("epsilon") = 0.1, py::arg("shift") = 1e-6, py::arg("eig_tolerance") = 1e-5,
     py::arg("max_eig_iterations") = 100, py::arg("cg_tolerance") = 0.1, py::arg("max_cg_iterations") = 100,
     py::arg("seed") = 0,
     "Runs one layout pipeline; returns ((n, 2) coordinates, info dict with metadata and embedding).");

  m.def("stress", [](const Graph& g, const Array& y, const std::string& metric, std::size_t dimension,
                     double min_distance, std::uint64_t seed) {
    const Layout2D layout = to_layout(y, g.num_vertices());
    if (metric == "shortest-path") return stress(layout, build_pair_set_all(g, ShortestPathMetric{}));
    if (metric != "resistance") throw InputError("metric must be 'resistance' or 'shortest-path'");
    RdmdsParams p;
    p.dimension = dimension;
    p.seed = seed;
    const auto e = compute_embedding(g, p);
    return stress(layout, build_pair_set_all(g, ResistanceMetric{&e, min_distance}));
  }, py::arg("graph"), py::arg("layout"), py::arg("metric") = "shortest-path", py::arg("dimension") = 10,
     py::arg("min_distance") = 0.01, py::arg("seed") = 0, "Stress over all vertex pairs.");

  m.def("neighborhood_preservation", [](const Graph& g, const Array& y, std::size_t k) {
    return neighborhood_preservation(g, to_layout(y, g.num_vertices()), k);
  }, py::arg("graph"), py::arg("layout"), py::arg("k") = kDefaultNeighborhoodK);
  m.def("greedy_modularity", [](const Graph& g) { return to_array(greedy_modularity(g).labels); },
        py::arg("graph"));
  m.def("modularity", [](const Graph& g, const IndexArray& labels) {
    const auto l = to_labels(labels);
    if (l.size() != g.num_vertices()) throw InputError("one label per vertex expected");
    return modularity(g, l);
  }, py::arg("graph"), py::arg("labels"));
  m.def("fowlkes_mallows", [](const IndexArray& a, const IndexArray& b) {
    const auto la = to_labels(a), lb = to_labels(b);
    return fowlkes_mallows(ClusterAssignment::from_labels(la), ClusterAssignment::from_labels(lb));
  }, py::arg("a"), py::arg("b"));
  m.def("agglomerative_clustering", [](const Array& y, std::size_t k, const std::string& linkage) {
    return to_array(agglomerative_layout_clustering(to_layout(y, static_cast<std::size_t>(y.shape(0))), k,
                                                    parse_linkage(linkage)).labels);
  }, py::arg("layout"), py::arg("k"), py::arg("linkage") = "ward");
  m.def("clustering_quality", [](const Graph& g, const Array& y, const std::string& linkage) {
    return clustering_quality(g, to_layout(y, g.num_vertices()), parse_linkage(linkage));
  }, py::arg("graph"), py::arg("layout"), py::arg("linkage") = "ward");

  m.def("render_svg", [](const Graph& g, const Array& y, std::optional<IndexArray> categories) {
    SvgOptions opt;
    if (categories) opt.node_categories = to_labels(*categories);
    return render_svg(to_layout(y, g.num_vertices()), g, opt);
  }, py::arg("graph"), py::arg("layout"), py::arg("categories") = py::none());
}
