#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "omega/graph.hpp"
#include "omega/layout.hpp"

namespace omega {

// A graph together with the external label of each vertex and any notices
// raised while loading (e.g. component extraction).
struct LoadedGraph {
  Graph graph;
  std::vector<std::string> labels;
  std::vector<std::string> notices;
};

// Matrix Market coordinate format (real / integer / pattern; general /
// symmetric / skew-symmetric). Off-diagonal entries become undirected edges
// weighted by |value| (pattern: 1); zero values and diagonal entries are
// dropped. The largest connected component is extracted. Labels are the
// 1-based matrix indices. Throws InputError with a line number.
LoadedGraph parse_matrix_market(std::istream& in);
LoadedGraph parse_matrix_market(const std::filesystem::path& path);

// "u v [w]" per line, '#' comments, arbitrary string labels. The largest
// connected component is extracted.
LoadedGraph parse_edge_list(std::istream& in);
LoadedGraph parse_edge_list(const std::filesystem::path& path);

// "kind:arg,arg,..." e.g. "grid:10,10", "binomial_tree:13",
// "random_partition:15,100,0.05,0.0002,7", "random_tree:100,3".
LoadedGraph generate_from_spec(std::string_view spec);

// Chooses by extension: .mtx -> Matrix Market, otherwise edge list.
LoadedGraph load_graph(const std::filesystem::path& path);

// "id,x,y" header, one row per vertex, shortest round-trip decimals.
void write_coordinates_csv(std::ostream& out, const Layout2D& layout,
                           const std::vector<std::string>& labels);

struct CoordinatesTable {
  std::vector<std::string> labels;
  Layout2D layout;
};

CoordinatesTable read_coordinates_csv(std::istream& in);

}  // namespace omega
