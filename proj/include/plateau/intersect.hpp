#pragma once

#include "plateau/bvh.hpp"
#include "plateau/errors.hpp"
#include "plateau/geometry.hpp"
#include "plateau/mesh.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace plateau {

// Intersection curves between triangle pairs. Empty iff the tested
// configuration is intersection-free at the stated tolerance.
struct IntersectionSet {
  std::vector<std::pair<Vec3, Vec3>> segments;
  std::vector<std::pair<int, int>> involved_triangle_pairs;
  long degenerate_ties = 0;  // coplanar/grazing configs resolved toward "no intersection"

  bool empty() const { return segments.empty(); }
  int size() const { return int(segments.size()); }
};

// Transversal intersection point of segment pq with triangle abc. Decisions
// use exact orientation signs; ties (coplanarity, edge grazing) resolve to
// "no intersection" and bump *ties when given.
std::optional<Vec3> segment_triangle_intersect(const Vec3& p, const Vec3& q, const Vec3& a,
                                               const Vec3& b, const Vec3& c, long* ties = nullptr);

// Intersection segment of two non-coplanar triangles (empty optional if
// disjoint or only tie-degenerate contact).
std::optional<std::pair<Vec3, Vec3>> triangle_triangle_intersect(const Vec3& a0, const Vec3& a1,
                                                                 const Vec3& a2, const Vec3& b0,
                                                                 const Vec3& b1, const Vec3& b2,
                                                                 double point_tol,
                                                                 long* ties = nullptr);

// All intersections between non-adjacent triangle pairs of one mesh
// (pairs sharing a vertex index or a bit-identical coordinate are adjacent).
IntersectionSet mesh_self_intersections(const DiskMesh& mesh, double tol_scale = 1.0);
IntersectionSet surface_self_intersections(const std::vector<Vec3>& vertices,
                                           const std::vector<Tri>& triangles,
                                           double tol_scale = 1.0);

// Intersections across two meshes; contact at shared (bit-identical) boundary
// vertices/edges is excluded.
IntersectionSet mesh_mesh_intersections(const DiskMesh& a, const DiskMesh& b,
                                        double tol_scale = 1.0);

struct SegmentHit {
  Vec3 point;
  int triangle = -1;
  double t = 0.0;  // parameter along pq
};

// All transversal hits of segment pq against mesh triangles, sorted by t.
std::vector<SegmentHit> segment_mesh_intersect(const Vec3& p, const Vec3& q, const DiskMesh& mesh);
std::vector<SegmentHit> segment_mesh_intersect(const Vec3& p, const Vec3& q,
                                               const std::vector<Vec3>& vertices,
                                               const std::vector<Tri>& triangles,
                                               const TriBVH* bvh = nullptr);

// Generalized winding number of p with respect to a closed oriented surface.
double winding_number(const Vec3& p, const ClosedSurface& surface);

enum class Side { Inside, Outside };

// Winding-number membership test; throws OnSurface when p is within the
// on-surface tolerance of the surface.
Side winding_side(const Vec3& p, const ClosedSurface& surface, double tol_scale = 1.0,
                  const SignedDistance* sd = nullptr);

}  // namespace plateau
