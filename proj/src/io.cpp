#include "omega/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "omega/error.hpp"
#include "omega/format.hpp"
#include "omega/generators.hpp"

namespace omega {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] void fail_line(std::size_t line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

// Restricts a graph to its largest component, carrying labels along.
LoadedGraph finish(Graph g, std::vector<std::string> labels, std::vector<std::string> notices) {
  if (g.num_edges() == 0) throw InputError("graph has no edges");
  if (g.is_connected()) return {std::move(g), std::move(labels), std::move(notices)};
  const std::size_t before = g.num_vertices();
  auto lcc = largest_connected_component(g);
  std::vector<std::string> kept;
  kept.reserve(lcc.new_to_old.size());
  for (Vertex old : lcc.new_to_old) kept.push_back(labels[old]);
  notices.push_back("extracted largest connected component: " +
                    std::to_string(lcc.graph.num_vertices()) + " of " + std::to_string(before) +
                    " vertices");
  return {std::move(lcc.graph), std::move(kept), std::move(notices)};
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

}  // namespace

LoadedGraph parse_matrix_market(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw InputError("line 1: empty Matrix Market file");
  ++line_no;
  const auto header = split_ws(lower(line));
  if (header.size() < 5 || header[0] != "%%matrixmarket" || header[1] != "matrix") {
    fail_line(line_no, "expected '%%MatrixMarket matrix coordinate <field> <symmetry>' header");
  }
  if (header[2] != "coordinate") fail_line(line_no, "only coordinate format is supported");
  const std::string& field = header[3];
  const std::string& symmetry = header[4];
  if (field == "complex") fail_line(line_no, "complex matrices are not supported");
  if (field != "real" && field != "integer" && field != "pattern" && field != "double") {
    fail_line(line_no, "unknown field type '" + field + "'");
  }
  if (symmetry != "general" && symmetry != "symmetric" && symmetry != "skew-symmetric" &&
      symmetry != "hermitian") {
    fail_line(line_no, "unknown symmetry '" + symmetry + "'");
  }
  const bool pattern = field == "pattern";

  std::size_t rows = 0, cols = 0, entries = 0;
  bool have_size = false;
  std::vector<Edge> edges;
  std::size_t seen = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '%') continue;
    const auto tok = split_ws(t);
    if (!have_size) {
      if (tok.size() != 3) fail_line(line_no, "expected 'rows cols entries'");
      try {
        rows = std::stoull(tok[0]);
        cols = std::stoull(tok[1]);
        entries = std::stoull(tok[2]);
      } catch (const std::exception&) {
        fail_line(line_no, "malformed size line");
      }
      if (rows != cols) fail_line(line_no, "matrix must be square to define a graph");
      if (rows == 0) fail_line(line_no, "matrix has no rows");
      have_size = true;
      edges.reserve(entries);
      continue;
    }
    if (tok.size() != (pattern ? 2u : 3u)) {
      fail_line(line_no, pattern ? "expected 'i j'" : "expected 'i j value'");
    }
    std::size_t i = 0, j = 0;
    try {
      i = std::stoull(tok[0]);
      j = std::stoull(tok[1]);
    } catch (const std::exception&) {
      fail_line(line_no, "malformed index");
    }
    if (i < 1 || j < 1 || i > rows || j > cols) fail_line(line_no, "index out of range");
    double value = 1.0;
    if (!pattern && !parse_double(tok[2], value)) {
      // from_chars rejects a leading '+'; accept it as in C scanf.
      if (!(tok[2].size() > 1 && tok[2][0] == '+' && parse_double(tok[2].substr(1), value))) {
        fail_line(line_no, "malformed value '" + tok[2] + "'");
      }
    }
    ++seen;
    if (!std::isfinite(value)) fail_line(line_no, "non-finite value");
    if (i == j || value == 0.0) continue;
    edges.push_back({i - 1, j - 1, std::abs(value)});
  }
  if (!have_size) throw InputError("line " + std::to_string(line_no) + ": missing size line");
  if (seen != entries) {
    throw InputError("line " + std::to_string(line_no) + ": expected " + std::to_string(entries) +
                     " entries, found " + std::to_string(seen));
  }

  // Symmetric storage lists each off-diagonal entry once. General storage
  // may list both (i,j) and (j,i); those describe one undirected edge whose
  // weight is the larger of the two directional sums.
  if (symmetry == "general") {
    std::unordered_map<std::uint64_t, std::size_t> slot;
    std::vector<Edge> unique;
    std::vector<std::pair<double, double>> directional;  // (i<j sum, i>j sum)
    for (const Edge& e : edges) {
      const std::uint64_t key = (static_cast<std::uint64_t>(std::min(e.u, e.v)) << 32) |
                                static_cast<std::uint64_t>(std::max(e.u, e.v));
      const auto [it, inserted] = slot.try_emplace(key, unique.size());
      if (inserted) {
        unique.push_back({std::min(e.u, e.v), std::max(e.u, e.v), 0.0});
        directional.emplace_back(0.0, 0.0);
      }
      auto& sums = directional[it->second];
      (e.u < e.v ? sums.first : sums.second) += e.weight;
    }
    for (std::size_t k = 0; k < unique.size(); ++k) {
      unique[k].weight = std::max(directional[k].first, directional[k].second);
    }
    edges = std::move(unique);
  }

  std::vector<std::string> labels(rows);
  for (std::size_t v = 0; v < rows; ++v) labels[v] = std::to_string(v + 1);
  return finish(Graph(rows, edges), std::move(labels), {});
}

LoadedGraph parse_matrix_market(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return parse_matrix_market(in);
}

LoadedGraph parse_edge_list(std::istream& in) {
  std::unordered_map<std::string, Vertex> ids;
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  auto id_of = [&](const std::string& label) {
    const auto [it, inserted] = ids.try_emplace(label, labels.size());
    if (inserted) labels.push_back(label);
    return it->second;
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const std::string t = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (t.empty()) continue;
    const auto tok = split_ws(t);
    if (tok.size() != 2 && tok.size() != 3) fail_line(line_no, "expected 'u v [w]'");
    double w = 1.0;
    if (tok.size() == 3 && !parse_double(tok[2], w)) {
      fail_line(line_no, "malformed weight '" + tok[2] + "'");
    }
    if (!(w > 0.0) || !std::isfinite(w)) fail_line(line_no, "non-positive weight " + tok[2]);
    const Vertex u = id_of(tok[0]);
    const Vertex v = id_of(tok[1]);
    edges.push_back({u, v, w});
  }
  if (edges.empty()) throw InputError("edge list is empty");
  Graph g(labels.size(), edges);
  return finish(std::move(g), std::move(labels), {});
}

LoadedGraph parse_edge_list(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return parse_edge_list(in);
}

LoadedGraph generate_from_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string kind(spec.substr(0, colon));
  std::vector<std::string> args;
  if (colon != std::string_view::npos) {
    std::stringstream ss{std::string(spec.substr(colon + 1))};
    std::string item;
    while (std::getline(ss, item, ',')) args.push_back(trim(item));
  }
  auto need = [&](std::size_t count) {
    if (args.size() != count) {
      throw InputError("generator '" + kind + "' expects " + std::to_string(count) +
                       " arguments");
    }
  };
  auto as_size = [&](std::size_t k) -> std::size_t {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(args[k], &used);
      if (used != args[k].size()) throw InputError("");
      return v;
    } catch (const std::exception&) {
      throw InputError("generator '" + kind + "': argument " + std::to_string(k + 1) +
                       " must be a non-negative integer");
    }
  };
  auto as_real = [&](std::size_t k) {
    double v = 0.0;
    if (!parse_double(args[k], v)) {
      throw InputError("generator '" + kind + "': argument " + std::to_string(k + 1) +
                       " must be a number");
    }
    return v;
  };

  Graph g;
  if (kind == "path") {
    need(1);
    g = generators::path(as_size(0));
  } else if (kind == "cycle") {
    need(1);
    g = generators::cycle(as_size(0));
  } else if (kind == "complete") {
    need(1);
    g = generators::complete(as_size(0));
  } else if (kind == "grid") {
    need(2);
    g = generators::grid(as_size(0), as_size(1));
  } else if (kind == "binomial_tree") {
    need(1);
    g = generators::binomial_tree(as_size(0));
  } else if (kind == "random_partition") {
    need(5);
    g = generators::random_partition(as_size(0), as_size(1), as_real(2), as_real(3), as_size(4));
  } else if (kind == "random_tree") {
    need(2);
    g = generators::random_tree(as_size(0), as_size(1));
  } else {
    throw InputError("unknown generator '" + kind + "'");
  }
  std::vector<std::string> labels(g.num_vertices());
  for (std::size_t v = 0; v < labels.size(); ++v) labels[v] = std::to_string(v);
  return finish(std::move(g), std::move(labels), {});
}

LoadedGraph load_graph(const std::filesystem::path& path) {
  if (lower(path.extension().string()) == ".mtx") return parse_matrix_market(path);
  return parse_edge_list(path);
}

void write_coordinates_csv(std::ostream& out, const Layout2D& layout,
                           const std::vector<std::string>& labels) {
  if (labels.size() != layout.size()) throw InputError("coordinates: label count mismatch");
  out << "id,x,y\n";
  for (std::size_t v = 0; v < layout.size(); ++v) {
    out << labels[v] << ',' << format_double(layout[v].x) << ',' << format_double(layout[v].y)
        << '\n';
  }
}

CoordinatesTable read_coordinates_csv(std::istream& in) {
  CoordinatesTable table;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line) || trim(line) != "id,x,y") {
    throw InputError("line 1: expected 'id,x,y' header");
  }
  ++line_no;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto c1 = t.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : t.find(',', c1 + 1);
    if (c2 == std::string::npos) fail_line(line_no, "expected 'id,x,y'");
    Point p;
    if (!parse_double(std::string_view(t).substr(c1 + 1, c2 - c1 - 1), p.x) ||
        !parse_double(std::string_view(t).substr(c2 + 1), p.y)) {
      fail_line(line_no, "malformed coordinate");
    }
    table.labels.push_back(t.substr(0, c1));
    table.layout.points.push_back(p);
  }
  return table;
}

}  // namespace omega
