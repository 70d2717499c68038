#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "translag/classifier.hpp"
#include "translag/geometry.hpp"

namespace translag {

struct PlotPoint {
  Point coord;
  ArticleLabel label = ArticleLabel::kOther;
  std::optional<Pmid> pmid;  // reported in validation errors
};

struct TriangleBin {
  double bx = 0.0;
  double by = 0.0;
  std::uint64_t count = 0;
  ArticleLabel label = ArticleLabel::kOther;  // most frequent label in the cell

  friend bool operator==(const TriangleBin&, const TriangleBin&) = default;
};

/// Aggregates points into square cells of side 1/resolution, centred on
/// multiples of 1/resolution. A cell centre that falls just outside the
/// triangle is moved to the nearest point on its boundary. Bins come out
/// ordered top to bottom, then left to right. Throws ValidationError for
/// a point whose barycentric weights fall below -tolerance.
std::vector<TriangleBin> bin_points(std::span<const PlotPoint> points, int resolution = 100,
                                   double tolerance = 1e-9);

struct PlotOptions {
  int width = 800;
  int height = 720;
  int margin = 40;
  double r_min = 1.0;
  double r_max = 20.0;
};

/// Circle radius for a bin: r_min + (r_max - r_min) * log(count) / log(max_count).
double bin_radius(std::uint64_t count, std::uint64_t max_count, const PlotOptions& options);

/// Pixel position of a triangle-plane point.
Point to_pixel(Point p, const PlotOptions& options);

/// Standalone SVG 1.1 document: triangle outline, vertex labels A/C/H, the
/// translational axis from the A-C midpoint to H (dashed), and one circle
/// per bin carrying a `label-<type>` class.
std::string render_svg(std::span<const TriangleBin> bins, const PlotOptions& options = {});

}  // namespace translag
