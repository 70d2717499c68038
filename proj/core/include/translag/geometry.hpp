#pragma once

#include <cmath>
#include <numbers>

namespace translag {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline constexpr double kHalfSqrt3 = std::numbers::sqrt3 / 2.0;

// Triangle of biomedicine: animal, cell/molecule and human corners.
inline constexpr Point kVertexA{kHalfSqrt3, -0.5};
inline constexpr Point kVertexC{-kHalfSqrt3, -0.5};
inline constexpr Point kVertexH{0.0, 1.0};

/// Barycentric weights (A, C, H) of a point in the triangle plane.
struct Barycentric {
  double a = 0.0;
  double c = 0.0;
  double h = 0.0;
};

inline Barycentric to_barycentric(Point p) {
  const double h = (2.0 * p.y + 1.0) / 3.0;
  const double a_minus_c = p.x / kHalfSqrt3;
  const double a_plus_c = 1.0 - h;
  return {(a_plus_c + a_minus_c) / 2.0, (a_plus_c - a_minus_c) / 2.0, h};
}

/// Inside or on the triangle, within `tolerance` of each edge.
inline bool in_triangle(Point p, double tolerance = 1e-12) {
  const Barycentric b = to_barycentric(p);
  return b.a >= -tolerance && b.c >= -tolerance && b.h >= -tolerance;
}

/// Closest point of the triangle (boundary included) to `p`.
Point project_onto_triangle(Point p);

}  // namespace translag
