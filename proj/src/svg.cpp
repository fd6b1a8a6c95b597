#include "omega/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "omega/error.hpp"

namespace omega {

namespace {

constexpr std::array<const char*, 10> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
};

}  // namespace

std::string render_svg(const Layout2D& layout, const Graph& g, const SvgOptions& options) {
  const std::size_t n = layout.size();
  if (n != g.num_vertices()) throw InputError("render_svg: layout/graph size mismatch");
  if (!options.node_categories.empty() && options.node_categories.size() != n) {
    throw InputError("render_svg: color column length mismatch");
  }
  double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
  double min_y = min_x, max_y = -min_x;
  for (const Point& p : layout.points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw InputError("render_svg: non-finite coordinate");
    }
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double margin_x = options.width * options.margin_fraction;
  const double margin_y = options.height * options.margin_fraction;
  const double span_x = max_x - min_x;
  const double span_y = max_y - min_y;
  const double usable_x = options.width - 2.0 * margin_x;
  const double usable_y = options.height - 2.0 * margin_y;
  double scale = 1.0;
  if (span_x > 0.0 || span_y > 0.0) {
    scale = std::min(span_x > 0.0 ? usable_x / span_x : std::numeric_limits<double>::infinity(),
                     span_y > 0.0 ? usable_y / span_y : std::numeric_limits<double>::infinity());
  }
  // Center the drawing inside the margins.
  const double offset_x = margin_x + (usable_x - span_x * scale) / 2.0;
  const double offset_y = margin_y + (usable_y - span_y * scale) / 2.0;
  auto sx = [&](double x) { return offset_x + (x - min_x) * scale; };
  auto sy = [&](double y) { return offset_y + (max_y - y) * scale; };  // y axis up

  std::ostringstream out;
  out.precision(6);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << options.width
      << "\" height=\"" << options.height << "\" viewBox=\"0 0 " << options.width << ' '
      << options.height << "\">\n";
  out << "<g stroke=\"" << options.edge_color << "\" stroke-width=\"" << options.edge_width
      << "\">\n";
  for (const Edge& e : g.edges()) {
    out << "<line x1=\"" << sx(layout[e.u].x) << "\" y1=\"" << sy(layout[e.u].y) << "\" x2=\""
        << sx(layout[e.v].x) << "\" y2=\"" << sy(layout[e.v].y) << "\"/>\n";
  }
  out << "</g>\n<g stroke=\"none\">\n";
  for (std::size_t v = 0; v < n; ++v) {
    const char* fill = options.node_categories.empty()
                           ? options.node_color.c_str()
                           : kPalette[options.node_categories[v] % kPalette.size()];
    out << "<circle cx=\"" << sx(layout[v].x) << "\" cy=\"" << sy(layout[v].y) << "\" r=\""
        << options.node_radius << "\" fill=\"" << fill << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace omega
