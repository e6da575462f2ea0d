#pragma once

#include "plateau/geometry.hpp"
#include "plateau/mesh.hpp"

#include <functional>
#include <vector>

namespace plateau {

// Static AABB tree over a triangle soup. The referenced vertex/triangle
// arrays must outlive the tree.
class TriBVH {
 public:
  TriBVH() = default;
  TriBVH(const std::vector<Vec3>& vertices, const std::vector<Tri>& triangles);

  bool empty() const { return nodes_.empty(); }

  // Closest point on the soup; fills triangle index.
  Vec3 closest_point(const Vec3& p, int* tri_index = nullptr) const;
  double distance(const Vec3& p) const { return dist(p, closest_point(p)); }

  // Indices of triangles whose AABB (padded) overlaps the segment's AABB and
  // actually intersects the segment's slab test.
  std::vector<int> segment_candidates(const Vec3& a, const Vec3& b, double pad = 0.0) const;

  // Indices of triangles whose AABB overlaps the given box.
  std::vector<int> box_candidates(const AABB& box, double pad = 0.0) const;

  // All pairs (i, j) with i from this tree and j from other whose boxes
  // overlap within pad. Sorted lexicographically (deterministic).
  std::vector<std::pair<int, int>> overlap_pairs(const TriBVH& other, double pad = 0.0) const;

  const std::vector<Vec3>* verts() const { return verts_; }
  const std::vector<Tri>* tris() const { return tris_; }

 private:
  struct Node {
    AABB box;
    int left = -1, right = -1;  // children; leaf when left < 0
    int begin = 0, end = 0;     // range in order_ for leaves
  };

  int build(int begin, int end, int depth);

  const std::vector<Vec3>* verts_ = nullptr;
  const std::vector<Tri>* tris_ = nullptr;
  std::vector<int> order_;
  std::vector<AABB> tri_boxes_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

// Angle-weighted vertex pseudonormals + face/edge normals for robust signed
// distance to a closed oriented surface (Baerentzen & Aanaes).
class SignedDistance {
 public:
  SignedDistance() = default;
  explicit SignedDistance(const ClosedSurface& surface);

  // Negative inside (for outward-oriented surfaces).
  double signed_distance(const Vec3& p, Vec3* closest = nullptr, Vec3* normal = nullptr) const;

  const TriBVH& bvh() const { return bvh_; }
  const ClosedSurface* surface() const { return surf_; }

 private:
  const ClosedSurface* surf_ = nullptr;
  TriBVH bvh_;
  std::vector<Vec3> vertex_normals_;
  std::map<std::pair<int, int>, Vec3> edge_normals_;
  std::vector<Vec3> face_normals_;
};

}  // namespace plateau
