#pragma once

#include "plateau/curve.hpp"
#include "plateau/errors.hpp"
#include "plateau/geometry.hpp"

#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace plateau {

using Tri = std::array<int, 3>;

// Triangulated disk-type surface with a fixed boundary loop.
struct DiskMesh {
  std::vector<Vec3> vertices;
  std::vector<Tri> triangles;
  std::vector<int> boundary_loop;   // ordered vertex indices along the boundary
  std::vector<bool> interior_mask;  // true = free (movable) vertex

  int vertex_count() const { return int(vertices.size()); }
  int triangle_count() const { return int(triangles.size()); }
  double total_area() const;
  AABB bbox() const { return bounding_box(vertices); }

  void rebuild_interior_mask();  // from boundary_loop
};

struct MeshChecks {
  int vertex_count = 0;
  int edge_count = 0;
  int triangle_count = 0;
  int euler = 0;
  bool edges_manifold = false;    // every edge on <= 2 triangles
  bool single_boundary = false;   // boundary edges form one closed loop
  bool is_disk = false;           // euler == 1 && manifold && single boundary
  bool no_degenerate = false;     // min area > 1e-12 * total/F
  double min_triangle_area = 0.0;
};

MeshChecks check_disk_mesh(const DiskMesh& mesh);

// True if every vertex of the curve appears bit-identically in the mesh
// boundary loop, in cyclic order (the loop may refine curve segments).
bool boundary_matches_curve(const DiskMesh& mesh, const JordanCurve& curve);

// Closed triangulated surface (no boundary), used as region boundary.
struct ClosedSurface {
  std::vector<Vec3> vertices;
  std::vector<Tri> triangles;

  int vertex_count() const { return int(vertices.size()); }
  int triangle_count() const { return int(triangles.size()); }
  double total_area() const;
  double signed_volume() const;  // positive when oriented outward
  AABB bbox() const { return bounding_box(vertices); }
};

struct ClosedChecks {
  bool closed = false;              // every edge exactly 2 triangles
  bool consistently_oriented = false;
  int euler = 0;
  int vertex_count = 0, edge_count = 0, triangle_count = 0;
};

ClosedChecks check_closed_surface(const ClosedSurface& s);

// Merge several meshes into one soup, gluing vertices with bit-identical
// coordinates. Triangles are concatenated in input order.
struct WeldResult {
  std::vector<Vec3> vertices;
  std::vector<Tri> triangles;
  std::vector<int> piece_of_triangle;  // source mesh index per triangle
};
WeldResult weld_by_coordinates(const std::vector<const DiskMesh*>& pieces);

// Flip triangles so that adjacent triangles traverse shared edges in opposite
// directions; returns false if the surface is not orientable that way.
bool orient_consistently(std::vector<Tri>& triangles);

// Edge -> incident triangle list (undirected key: sorted pair).
std::map<std::pair<int, int>, std::vector<int>> build_edge_map(const std::vector<Tri>& triangles);

}  // namespace plateau
