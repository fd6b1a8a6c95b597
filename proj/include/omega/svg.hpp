#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "omega/graph.hpp"
#include "omega/layout.hpp"

namespace omega {

struct SvgOptions {
  double width = 800.0;
  double height = 800.0;
  double margin_fraction = 0.05;
  double node_radius = 3.0;
  double edge_width = 0.5;
  std::string node_color = "#1f77b4";
  std::string edge_color = "#999999";
  // Optional per-node category (e.g. community id) mapped through a fixed
  // categorical palette. Empty means every node gets node_color.
  std::vector<std::size_t> node_categories;
};

// SVG 1.1 document: edges as <line>, nodes as <circle>, coordinates fitted
// to the viewport with a uniform scale.
std::string render_svg(const Layout2D& layout, const Graph& g, const SvgOptions& options = {});

}  // namespace omega
