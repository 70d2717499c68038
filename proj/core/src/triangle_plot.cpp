#include "translag/triangle_plot.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "translag/error.hpp"

namespace translag {

namespace {

Point closest_on_segment(Point p, Point a, Point b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / (dx * dx + dy * dy), 0.0, 1.0);
  return {a.x + t * dx, a.y + t * dy};
}

double dist2(Point a, Point b) { return (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y); }

}  // namespace

Point project_onto_triangle(Point p) {
  if (in_triangle(p, 0.0)) return p;
  const std::array<Point, 3> candidates{closest_on_segment(p, kVertexA, kVertexC),
                                        closest_on_segment(p, kVertexC, kVertexH),
                                        closest_on_segment(p, kVertexH, kVertexA)};
  return *std::min_element(candidates.begin(), candidates.end(),
                           [&](Point a, Point b) { return dist2(p, a) < dist2(p, b); });
}

std::vector<TriangleBin> bin_points(std::span<const PlotPoint> points, int resolution,
                                   double tolerance) {
  if (resolution <= 0) throw ValidationError("bin resolution must be positive");
  struct Cell {
    std::uint64_t count = 0;
    std::array<std::uint64_t, 8> by_label{};
  };
  std::map<std::pair<std::int64_t, std::int64_t>, Cell> cells;
  const auto res = static_cast<double>(resolution);
  for (const auto& pt : points) {
    if (!std::isfinite(pt.coord.x) || !std::isfinite(pt.coord.y) || !in_triangle(pt.coord, tolerance)) {
      throw ValidationError(fmt::format("coordinate ({}, {}) lies outside the triangle{}",
                                        pt.coord.x, pt.coord.y,
                                        pt.pmid ? fmt::format(" (pmid {})", *pt.pmid) : ""));
    }
    const auto col = static_cast<std::int64_t>(std::llround(pt.coord.x * res));
    const auto row = static_cast<std::int64_t>(std::llround(pt.coord.y * res));
    Cell& cell = cells[{-row, col}];
    ++cell.count;
    ++cell.by_label[label_index(pt.label)];
  }

  std::vector<TriangleBin> bins;
  bins.reserve(cells.size());
  for (const auto& [key, cell] : cells) {
    const Point centre = project_onto_triangle(
        {static_cast<double>(key.second) / res, static_cast<double>(-key.first) / res});
    const auto top = std::max_element(cell.by_label.begin(), cell.by_label.end());
    bins.push_back(TriangleBin{centre.x, centre.y, cell.count,
                               kAllLabels[static_cast<std::size_t>(top - cell.by_label.begin())]});
  }
  // Projection can move a centre past its neighbours, so order on the final position.
  std::stable_sort(bins.begin(), bins.end(), [](const TriangleBin& a, const TriangleBin& b) {
    return a.by != b.by ? a.by > b.by : a.bx < b.bx;
  });
  return bins;
}

double bin_radius(std::uint64_t count, std::uint64_t max_count, const PlotOptions& options) {
  if (count <= 1 || max_count <= 1) return options.r_min;
  const double scale = std::log(static_cast<double>(count)) / std::log(static_cast<double>(max_count));
  return options.r_min + (options.r_max - options.r_min) * std::min(scale, 1.0);
}

Point to_pixel(Point p, const PlotOptions& o) {
  const double span_x = 2.0 * kHalfSqrt3;
  const double span_y = 1.5;
  const double scale = std::min((o.width - 2.0 * o.margin) / span_x, (o.height - 2.0 * o.margin) / span_y);
  // Centre the triangle's bounding box in the canvas.
  const double off_x = (o.width - span_x * scale) / 2.0;
  const double off_y = (o.height - span_y * scale) / 2.0;
  return {off_x + (p.x + kHalfSqrt3) * scale, off_y + (1.0 - p.y) * scale};
}

std::string render_svg(std::span<const TriangleBin> bins, const PlotOptions& o) {
  if (o.width <= 2 * o.margin || o.height <= 2 * o.margin) {
    throw ValidationError("plot canvas too small for its margin");
  }
  if (!(o.r_min > 0.0) || o.r_max < o.r_min) throw ValidationError("invalid radius bounds");

  const Point a = to_pixel(kVertexA, o);
  const Point c = to_pixel(kVertexC, o);
  const Point h = to_pixel(kVertexH, o);
  const Point axis_from = to_pixel({0.0, -0.5}, o);

  std::string svg;
  auto out = std::back_inserter(svg);
  fmt::format_to(out,
                 "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                 "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" "
                 "height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n",
                 o.width, o.height);
  svg +=
      "<style>\n"
      "  .frame { fill: none; stroke: #333333; stroke-width: 1.5; }\n"
      "  .axis { stroke: #1f4e9c; stroke-width: 1.5; stroke-dasharray: 6 4; }\n"
      "  .vertex { font-family: sans-serif; font-size: 18px; fill: #222222; }\n"
      "  .bin { fill-opacity: 0.55; stroke: none; }\n"
      "  .label-A { fill: #d95f02; }\n"
      "  .label-C { fill: #1b9e77; }\n"
      "  .label-H { fill: #7570b3; }\n"
      "  .label-AC { fill: #e6ab02; }\n"
      "  .label-AH { fill: #e7298a; }\n"
      "  .label-CH { fill: #66a61e; }\n"
      "  .label-ACH { fill: #a6761d; }\n"
      "  .label-Other { fill: #666666; }\n"
      "</style>\n";
  fmt::format_to(out, "<polygon class=\"frame\" points=\"{:.3f},{:.3f} {:.3f},{:.3f} {:.3f},{:.3f}\"/>\n",
                 a.x, a.y, c.x, c.y, h.x, h.y);
  fmt::format_to(out,
                 "<line class=\"axis\" x1=\"{:.3f}\" y1=\"{:.3f}\" x2=\"{:.3f}\" y2=\"{:.3f}\" "
                 "stroke-dasharray=\"6 4\"/>\n",
                 axis_from.x, axis_from.y, h.x, h.y);

  std::uint64_t max_count = 0;
  for (const auto& b : bins) max_count = std::max(max_count, b.count);
  svg += "<g class=\"bins\">\n";
  for (const auto& b : bins) {
    const Point p = to_pixel({b.bx, b.by}, o);
    fmt::format_to(out,
                   "<circle class=\"bin label-{}\" cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"{:.3f}\" "
                   "data-count=\"{}\"/>\n",
                   label_name(b.label), p.x, p.y, bin_radius(b.count, max_count, o), b.count);
  }
  svg += "</g>\n";

  const double pad = 8.0;
  fmt::format_to(out, "<text class=\"vertex\" x=\"{:.3f}\" y=\"{:.3f}\" text-anchor=\"start\">A</text>\n",
                 a.x + pad, a.y + 2.0 * pad);
  fmt::format_to(out, "<text class=\"vertex\" x=\"{:.3f}\" y=\"{:.3f}\" text-anchor=\"end\">C</text>\n",
                 c.x - pad, c.y + 2.0 * pad);
  fmt::format_to(out, "<text class=\"vertex\" x=\"{:.3f}\" y=\"{:.3f}\" text-anchor=\"middle\">H</text>\n",
                 h.x, h.y - pad);
  svg += "</svg>\n";
  return svg;
}

}  // namespace translag
