#pragma once

#include "plateau/errors.hpp"
#include "plateau/geometry.hpp"

#include <string>
#include <vector>

namespace plateau {

// Closed simple polygonal curve in 3-space; vertices in traversal order,
// the closing segment (back, front) is implicit.
struct JordanCurve {
  std::vector<Vec3> vertices;

  int size() const { return int(vertices.size()); }
  const Vec3& at(int i) const { return vertices[wrap(i)]; }
  int wrap(int i) const {
    int n = size();
    return ((i % n) + n) % n;
  }
  Vec3 segment_start(int i) const { return vertices[wrap(i)]; }
  Vec3 segment_end(int i) const { return vertices[wrap(i + 1)]; }

  AABB bbox() const { return bounding_box(vertices); }
  Tolerances tolerances(double scale = 1.0) const {
    return Tolerances::for_points(vertices, scale);
  }
  double length() const;
  Vec3 centroid() const;
};

struct ValidationReport {
  bool valid = false;
  bool closed = true;  // always true by construction
  bool simple = false;
  bool enough_vertices = false;
  bool vertices_distinct = false;
  int vertex_count = 0;
  double min_segment_length = 0.0;
  std::vector<std::string> failures;
};

// Simplicity check: no two non-adjacent segments come within point tolerance.
ValidationReport validate_curve(const JordanCurve& curve, double tol_scale = 1.0);

// Sum of exterior turning angles at the vertices, in radians. >= 2*pi for any
// closed polygon (Fenchel).
double total_curvature(const JordanCurve& curve);

// Gauss linking number of two disjoint closed polygonal curves via the exact
// solid-angle sum over segment pairs. Throws CurvesTooClose / NonIntegerResult.
int linking_number(const JordanCurve& a, const JordanCurve& b, double tol_scale = 1.0);

// Raw Gauss integral value (the double sum / 4pi) before rounding.
double linking_integral(const JordanCurve& a, const JordanCurve& b);

}  // namespace plateau
