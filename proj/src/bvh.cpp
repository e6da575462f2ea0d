#include "plateau/bvh.hpp"

#include <algorithm>
#include <cmath>
#include <stack>

namespace plateau {

TriBVH::TriBVH(const std::vector<Vec3>& vertices, const std::vector<Tri>& triangles)
    : verts_(&vertices), tris_(&triangles) {
  int n = int(triangles.size());
  if (n == 0) return;
  order_.resize(n);
  tri_boxes_.resize(n);
  for (int i = 0; i < n; ++i) {
    order_[i] = i;
    AABB b;
    for (int k = 0; k < 3; ++k) b.expand(vertices[triangles[i][k]]);
    tri_boxes_[i] = b;
  }
  nodes_.reserve(2 * n);
  root_ = build(0, n, 0);
}

int TriBVH::build(int begin, int end, int depth) {
  Node node;
  for (int i = begin; i < end; ++i) node.box.expand(tri_boxes_[order_[i]]);
  int idx = int(nodes_.size());
  nodes_.push_back(node);
  if (end - begin <= 4 || depth > 60) {
    nodes_[idx].begin = begin;
    nodes_[idx].end = end;
    return idx;
  }
  Vec3 ext = node.box.hi - node.box.lo;
  int axis = 0;
  if (ext.y > ext.x) axis = 1;
  if (ext.z > ext[axis]) axis = 2;
  int mid = (begin + end) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](int a, int b) {
                     double ca = tri_boxes_[a].lo[axis] + tri_boxes_[a].hi[axis];
                     double cb = tri_boxes_[b].lo[axis] + tri_boxes_[b].hi[axis];
                     if (ca != cb) return ca < cb;
                     return a < b;
                   });
  int l = build(begin, mid, depth + 1);
  int r = build(mid, end, depth + 1);
  nodes_[idx].left = l;
  nodes_[idx].right = r;
  return idx;
}

Vec3 TriBVH::closest_point(const Vec3& p, int* tri_index) const {
  Vec3 best = p;
  double best_d2 = std::numeric_limits<double>::max();
  int best_tri = -1;
  if (root_ < 0) {
    if (tri_index) *tri_index = -1;
    return best;
  }
  std::stack<int> st;
  st.push(root_);
  while (!st.empty()) {
    int ni = st.top();
    st.pop();
    const Node& n = nodes_[ni];
    if (n.box.dist2_to(p) >= best_d2) continue;
    if (n.left < 0) {
      for (int i = n.begin; i < n.end; ++i) {
        int t = order_[i];
        const Tri& tr = (*tris_)[t];
        Vec3 c = closest_point_triangle(p, (*verts_)[tr[0]], (*verts_)[tr[1]], (*verts_)[tr[2]]);
        double d2 = dist2(p, c);
        if (d2 < best_d2 || (d2 == best_d2 && t < best_tri)) {
          best_d2 = d2;
          best = c;
          best_tri = t;
        }
      }
    } else {
      double dl = nodes_[n.left].box.dist2_to(p);
      double dr = nodes_[n.right].box.dist2_to(p);
      // Visit the nearer child first.
      if (dl < dr) {
        st.push(n.right);
        st.push(n.left);
      } else {
        st.push(n.left);
        st.push(n.right);
      }
    }
  }
  if (tri_index) *tri_index = best_tri;
  return best;
}

namespace {

bool segment_intersects_box(const Vec3& a, const Vec3& b, const AABB& box, double pad) {
  // Slab test.
  double tmin = 0.0, tmax = 1.0;
  Vec3 d = b - a;
  for (int i = 0; i < 3; ++i) {
    double lo = box.lo[i] - pad, hi = box.hi[i] + pad;
    if (std::abs(d[i]) < 1e-300) {
      if (a[i] < lo || a[i] > hi) return false;
    } else {
      double t1 = (lo - a[i]) / d[i];
      double t2 = (hi - a[i]) / d[i];
      if (t1 > t2) std::swap(t1, t2);
      tmin = std::max(tmin, t1);
      tmax = std::min(tmax, t2);
      if (tmin > tmax) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<int> TriBVH::segment_candidates(const Vec3& a, const Vec3& b, double pad) const {
  std::vector<int> out;
  if (root_ < 0) return out;
  std::stack<int> st;
  st.push(root_);
  while (!st.empty()) {
    int ni = st.top();
    st.pop();
    const Node& n = nodes_[ni];
    if (!segment_intersects_box(a, b, n.box, pad)) continue;
    if (n.left < 0) {
      for (int i = n.begin; i < n.end; ++i)
        if (segment_intersects_box(a, b, tri_boxes_[order_[i]], pad)) out.push_back(order_[i]);
    } else {
      st.push(n.left);
      st.push(n.right);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> TriBVH::box_candidates(const AABB& box, double pad) const {
  std::vector<int> out;
  if (root_ < 0) return out;
  std::stack<int> st;
  st.push(root_);
  while (!st.empty()) {
    int ni = st.top();
    st.pop();
    const Node& n = nodes_[ni];
    if (!n.box.overlaps(box, pad)) continue;
    if (n.left < 0) {
      for (int i = n.begin; i < n.end; ++i)
        if (tri_boxes_[order_[i]].overlaps(box, pad)) out.push_back(order_[i]);
    } else {
      st.push(n.left);
      st.push(n.right);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<int, int>> TriBVH::overlap_pairs(const TriBVH& other, double pad) const {
  std::vector<std::pair<int, int>> out;
  if (root_ < 0 || other.root_ < 0) return out;
  std::stack<std::pair<int, int>> st;
  st.push({root_, other.root_});
  while (!st.empty()) {
    auto [i, j] = st.top();
    st.pop();
    const Node& a = nodes_[i];
    const Node& b = other.nodes_[j];
    if (!a.box.overlaps(b.box, pad)) continue;
    bool a_leaf = a.left < 0, b_leaf = b.left < 0;
    if (a_leaf && b_leaf) {
      for (int x = a.begin; x < a.end; ++x)
        for (int y = b.begin; y < b.end; ++y) {
          int ti = order_[x], tj = other.order_[y];
          if (tri_boxes_[ti].overlaps(other.tri_boxes_[tj], pad)) out.push_back({ti, tj});
        }
    } else if (a_leaf || (!b_leaf && b.box.diagonal() > a.box.diagonal())) {
      st.push({i, b.left});
      st.push({i, b.right});
    } else {
      st.push({a.left, j});
      st.push({a.right, j});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

SignedDistance::SignedDistance(const ClosedSurface& surface)
    : surf_(&surface), bvh_(surface.vertices, surface.triangles) {
  int nv = surface.vertex_count();
  vertex_normals_.assign(nv, Vec3{0, 0, 0});
  face_normals_.resize(surface.triangle_count());
  for (int t = 0; t < surface.triangle_count(); ++t) {
    const Tri& tr = surface.triangles[t];
    const Vec3 &a = surface.vertices[tr[0]], &b = surface.vertices[tr[1]],
               &c = surface.vertices[tr[2]];
    Vec3 n = triangle_normal(a, b, c);
    face_normals_[t] = n;
    // Angle-weighted accumulation at each corner.
    const Vec3* pts[3] = {&a, &b, &c};
    for (int k = 0; k < 3; ++k) {
      Vec3 e0 = *pts[(k + 1) % 3] - *pts[k];
      Vec3 e1 = *pts[(k + 2) % 3] - *pts[k];
      double ang = std::atan2(norm(cross(e0, e1)), dot(e0, e1));
      vertex_normals_[tr[k]] += n * ang;
    }
    for (int e = 0; e < 3; ++e) {
      int u = tr[e], v = tr[(e + 1) % 3];
      auto key = std::minmax(u, v);
      edge_normals_[{key.first, key.second}] += n;
    }
  }
  for (auto& n : vertex_normals_) n = normalized(n);
  for (auto& [k, n] : edge_normals_) n = normalized(n);
}

double SignedDistance::signed_distance(const Vec3& p, Vec3* closest, Vec3* normal) const {
  int tri = -1;
  Vec3 c = bvh_.closest_point(p, &tri);
  if (closest) *closest = c;
  double d = dist(p, c);
  if (tri < 0) {
    if (normal) *normal = Vec3{0, 0, 1};
    return d;
  }
  const Tri& tr = (*bvh_.tris())[tri];
  const Vec3 &a = surf_->vertices[tr[0]], &b = surf_->vertices[tr[1]], &cc = surf_->vertices[tr[2]];

  // Classify the closest feature to pick the right pseudonormal.
  Vec3 n = face_normals_[tri];
  double eps = 1e-12 * (1.0 + norm(c));
  int on_vertex = -1;
  for (int k = 0; k < 3; ++k)
    if (dist(c, surf_->vertices[tr[k]]) <= eps) on_vertex = tr[k];
  if (on_vertex >= 0) {
    n = vertex_normals_[on_vertex];
  } else {
    const Vec3* pts[3] = {&a, &b, &cc};
    for (int e = 0; e < 3; ++e) {
      Vec3 cp = closest_point_segment(c, *pts[e], *pts[(e + 1) % 3]);
      if (dist(c, cp) <= eps) {
        auto key = std::minmax(tr[e], tr[(e + 1) % 3]);
        auto it = edge_normals_.find({key.first, key.second});
        if (it != edge_normals_.end()) n = it->second;
        break;
      }
    }
  }
  if (normal) *normal = n;
  double side = dot(p - c, n);
  return side >= 0.0 ? d : -d;
}

}  // namespace plateau
