#include "plateau/intersect.hpp"

#include "plateau/predicates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <set>

namespace plateau {

std::optional<Vec3> segment_triangle_intersect(const Vec3& p, const Vec3& q, const Vec3& a,
                                               const Vec3& b, const Vec3& c, long* ties) {
  int sp = orient3d(a, b, c, p);
  int sq = orient3d(a, b, c, q);
  if (sp == 0 || sq == 0) {
    // Endpoint on the plane or coplanar segment: symbolic tie, no
    // intersection. Count as a tie only when the stab would otherwise hit.
    if (ties) {
      if (sp == 0 && sq == 0) {
        ++(*ties);
      } else {
        int v1 = orient3d(p, q, a, b);
        int v2 = orient3d(p, q, b, c);
        int v3 = orient3d(p, q, c, a);
        if (v1 != 0 && v1 == v2 && v2 == v3) ++(*ties);
      }
    }
    return std::nullopt;
  }
  if (sp == sq) return std::nullopt;

  int v1 = orient3d(p, q, a, b);
  int v2 = orient3d(p, q, b, c);
  int v3 = orient3d(p, q, c, a);
  if (v1 == 0 || v2 == 0 || v3 == 0) {
    if (ties) ++(*ties);
    return std::nullopt;  // grazing through an edge or vertex
  }
  if (v1 != v2 || v2 != v3) return std::nullopt;

  // Transversal crossing; locate it with the plane parameter.
  Vec3 n = cross(b - a, c - a);
  double dp = dot(p - a, n);
  double dq = dot(q - a, n);
  double t = dp / (dp - dq);
  t = std::clamp(t, 0.0, 1.0);
  return p + (q - p) * t;
}

std::optional<std::pair<Vec3, Vec3>> triangle_triangle_intersect(const Vec3& a0, const Vec3& a1,
                                                                 const Vec3& a2, const Vec3& b0,
                                                                 const Vec3& b1, const Vec3& b2,
                                                                 double point_tol, long* ties) {
  std::vector<Vec3> pts;
  auto add = [&](const std::optional<Vec3>& h) {
    if (!h) return;
    for (const auto& p : pts)
      if (dist(p, *h) <= point_tol) return;
    pts.push_back(*h);
  };
  add(segment_triangle_intersect(a0, a1, b0, b1, b2, ties));
  add(segment_triangle_intersect(a1, a2, b0, b1, b2, ties));
  add(segment_triangle_intersect(a2, a0, b0, b1, b2, ties));
  add(segment_triangle_intersect(b0, b1, a0, a1, a2, ties));
  add(segment_triangle_intersect(b1, b2, a0, a1, a2, ties));
  add(segment_triangle_intersect(b2, b0, a0, a1, a2, ties));
  if (pts.size() < 2) return std::nullopt;

  // All points lie on the common segment; the farthest pair spans it.
  double best = -1.0;
  std::pair<Vec3, Vec3> seg;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) {
      double d = dist2(pts[i], pts[j]);
      if (d > best) {
        best = d;
        seg = {pts[i], pts[j]};
      }
    }
  if (best <= point_tol * point_tol) return std::nullopt;
  return seg;
}

namespace {

int shared_coordinate_count(const Vec3* a[3], const Vec3* b[3]) {
  int count = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (*a[i] == *b[j]) {
        ++count;
        break;
      }
  return count;
}

// Drop intersection segments that only realize contact at shared coordinates.
bool segment_beyond_shared_points(const std::pair<Vec3, Vec3>& seg, const Vec3* a[3],
                                  const Vec3* b[3], double point_tol) {
  std::vector<Vec3> shared;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (*a[i] == *b[j]) shared.push_back(*a[i]);
  if (shared.empty()) return true;
  auto near_shared = [&](const Vec3& p) {
    for (const auto& s : shared)
      if (dist(p, s) <= point_tol) return true;
    return false;
  };
  // Keep only if some part of the segment is away from every shared point.
  if (!near_shared(seg.first) || !near_shared(seg.second)) return true;
  Vec3 mid = (seg.first + seg.second) * 0.5;
  return !near_shared(mid);
}

IntersectionSet pairs_intersections(const std::vector<Vec3>& va, const std::vector<Tri>& ta,
                                    const std::vector<Vec3>& vb, const std::vector<Tri>& tb,
                                    const std::vector<std::pair<int, int>>& pairs, bool same_mesh,
                                    double point_tol) {
  IntersectionSet out;
  for (auto [i, j] : pairs) {
    if (same_mesh && i >= j) continue;
    const Tri& A = ta[i];
    const Tri& B = tb[j];
    if (same_mesh) {
      bool shares_index = false;
      for (int u = 0; u < 3 && !shares_index; ++u)
        for (int v = 0; v < 3; ++v)
          if (A[u] == B[v]) {
            shares_index = true;
            break;
          }
      if (shares_index) continue;
    }
    const Vec3* pa[3] = {&va[A[0]], &va[A[1]], &va[A[2]]};
    const Vec3* pb[3] = {&vb[B[0]], &vb[B[1]], &vb[B[2]]};
    int shared = shared_coordinate_count(pa, pb);
    if (shared >= 2) continue;  // glued along an edge: adjacent
    auto seg = triangle_triangle_intersect(*pa[0], *pa[1], *pa[2], *pb[0], *pb[1], *pb[2],
                                           point_tol, &out.degenerate_ties);
    if (!seg) continue;
    if (shared == 1 && !segment_beyond_shared_points(*seg, pa, pb, point_tol)) continue;
    out.segments.push_back(*seg);
    out.involved_triangle_pairs.push_back({i, j});
  }
  return out;
}

}  // namespace

IntersectionSet surface_self_intersections(const std::vector<Vec3>& vertices,
                                           const std::vector<Tri>& triangles, double tol_scale) {
  Tolerances tol = Tolerances::for_points(vertices, tol_scale);
  TriBVH bvh(vertices, triangles);
  auto pairs = bvh.overlap_pairs(bvh, tol.point());
  return pairs_intersections(vertices, triangles, vertices, triangles, pairs, true, tol.point());
}

IntersectionSet mesh_self_intersections(const DiskMesh& mesh, double tol_scale) {
  return surface_self_intersections(mesh.vertices, mesh.triangles, tol_scale);
}

IntersectionSet mesh_mesh_intersections(const DiskMesh& a, const DiskMesh& b, double tol_scale) {
  std::vector<Vec3> all = a.vertices;
  all.insert(all.end(), b.vertices.begin(), b.vertices.end());
  Tolerances tol = Tolerances::for_points(all, tol_scale);
  TriBVH ba(a.vertices, a.triangles);
  TriBVH bb(b.vertices, b.triangles);
  auto pairs = ba.overlap_pairs(bb, tol.point());
  return pairs_intersections(a.vertices, a.triangles, b.vertices, b.triangles, pairs, false,
                             tol.point());
}

std::vector<SegmentHit> segment_mesh_intersect(const Vec3& p, const Vec3& q,
                                               const std::vector<Vec3>& vertices,
                                               const std::vector<Tri>& triangles,
                                               const TriBVH* bvh) {
  std::vector<SegmentHit> hits;
  std::vector<int> candidates;
  TriBVH local;
  if (!bvh) {
    local = TriBVH(vertices, triangles);
    bvh = &local;
  }
  candidates = bvh->segment_candidates(p, q);
  double len = dist(p, q);
  for (int t : candidates) {
    const Tri& tr = triangles[t];
    auto h = segment_triangle_intersect(p, q, vertices[tr[0]], vertices[tr[1]], vertices[tr[2]]);
    if (h) {
      SegmentHit hit;
      hit.point = *h;
      hit.triangle = t;
      hit.t = len > 0 ? dist(p, *h) / len : 0.0;
      hits.push_back(hit);
    }
  }
  std::sort(hits.begin(), hits.end(), [](const SegmentHit& a, const SegmentHit& b) {
    if (a.t != b.t) return a.t < b.t;
    return a.triangle < b.triangle;
  });
  return hits;
}

std::vector<SegmentHit> segment_mesh_intersect(const Vec3& p, const Vec3& q, const DiskMesh& mesh) {
  return segment_mesh_intersect(p, q, mesh.vertices, mesh.triangles, nullptr);
}

double winding_number(const Vec3& p, const ClosedSurface& surface) {
  double total = 0.0;
  for (const auto& t : surface.triangles) {
    Vec3 a = surface.vertices[t[0]] - p;
    Vec3 b = surface.vertices[t[1]] - p;
    Vec3 c = surface.vertices[t[2]] - p;
    double la = norm(a), lb = norm(b), lc = norm(c);
    double det = dot(a, cross(b, c));
    double denom = la * lb * lc + dot(a, b) * lc + dot(b, c) * la + dot(c, a) * lb;
    total += 2.0 * std::atan2(det, denom);
  }
  return total / (4.0 * std::numbers::pi);
}

Side winding_side(const Vec3& p, const ClosedSurface& surface, double tol_scale,
                  const SignedDistance* sd) {
  Tolerances tol = Tolerances::for_points(surface.vertices, tol_scale);
  double d;
  if (sd) {
    d = std::abs(sd->signed_distance(p));
  } else {
    TriBVH bvh(surface.vertices, surface.triangles);
    d = bvh.distance(p);
  }
  if (d <= tol.surface())
    throw OnSurface("winding_side: point within on-surface tolerance (d=" + std::to_string(d) +
                    ")");
  double w = winding_number(p, surface);
  return std::abs(w - 1.0) < 0.5 ? Side::Inside
         : std::abs(w) < 0.5     ? Side::Outside
                                 : (w >= 0.5 ? Side::Inside : Side::Outside);
}

}  // namespace plateau
