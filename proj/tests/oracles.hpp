// Independent test oracles. These deliberately avoid the library's own
// intersection/winding code paths so they can cross-check them.
#pragma once

#include "plateau/curve.hpp"
#include "plateau/geometry.hpp"
#include "plateau/mesh.hpp"

#include <cmath>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using plateau::Tri;
using plateau::Vec3;

// Signed-crossing linking number in a random generic projection.
inline int linking_by_projection(const plateau::JordanCurve& a, const plateau::JordanCurve& b,
                                 unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int attempt = 0; attempt < 32; ++attempt) {
    Vec3 n;
    do {
      n = Vec3{uni(rng), uni(rng), uni(rng)};
    } while (plateau::norm2(n) < 0.1);
    n = plateau::normalized(n);
    Vec3 seedv = std::abs(n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    Vec3 u = plateau::normalized(plateau::cross(n, seedv));
    Vec3 v = plateau::cross(n, u);

    auto proj = [&](const Vec3& p) {
      return std::array<double, 3>{plateau::dot(p, u), plateau::dot(p, v), plateau::dot(p, n)};
    };

    double half_sum = 0.0;
    bool degenerate = false;
    for (int i = 0; i < a.size() && !degenerate; ++i) {
      auto p1 = proj(a.segment_start(i)), p2 = proj(a.segment_end(i));
      for (int j = 0; j < b.size(); ++j) {
        auto q1 = proj(b.segment_start(j)), q2 = proj(b.segment_end(j));
        double d1x = p2[0] - p1[0], d1y = p2[1] - p1[1];
        double d2x = q2[0] - q1[0], d2y = q2[1] - q1[1];
        double denom = d1x * d2y - d1y * d2x;
        if (std::abs(denom) < 1e-14) continue;
        double rx = q1[0] - p1[0], ry = q1[1] - p1[1];
        double s = (rx * d2y - ry * d2x) / denom;
        double t = (rx * d1y - ry * d1x) / denom;
        if (s <= 1e-12 || s >= 1 - 1e-12 || t <= 1e-12 || t >= 1 - 1e-12) {
          if (s > -1e-9 && s < 1 + 1e-9 && t > -1e-9 && t < 1 + 1e-9 &&
              (std::abs(s) < 1e-9 || std::abs(s - 1) < 1e-9 || std::abs(t) < 1e-9 ||
               std::abs(t - 1) < 1e-9)) {
            degenerate = true;  // crossing at a vertex: re-draw projection
            break;
          }
          continue;
        }
        double za = p1[2] + s * (p2[2] - p1[2]);
        double zb = q1[2] + t * (q2[2] - q1[2]);
        if (std::abs(za - zb) < 1e-14) {
          degenerate = true;
          break;
        }
        double eps = denom > 0 ? 1.0 : -1.0;
        // Crossing sign flips with which strand passes over.
        half_sum += (za > zb) ? eps : -eps;
      }
    }
    if (degenerate) continue;
    return int(std::lround(half_sum / 2.0));
  }
  return 0;
}

// Single transversal ray-triangle crossing test in plain fp arithmetic.
inline std::optional<double> ray_hits_triangle(const Vec3& o, const Vec3& d, const Vec3& a,
                                               const Vec3& b, const Vec3& c, bool* degenerate) {
  Vec3 e1 = b - a, e2 = c - a;
  Vec3 p = plateau::cross(d, e2);
  double det = plateau::dot(e1, p);
  if (std::abs(det) < 1e-14) return std::nullopt;
  double inv = 1.0 / det;
  Vec3 tv = o - a;
  double uu = plateau::dot(tv, p) * inv;
  if (uu < 1e-10 || uu > 1 - 1e-10) {
    if (uu > -1e-7 && uu < 1 + 1e-7) *degenerate = true;
    return std::nullopt;
  }
  Vec3 q = plateau::cross(tv, e1);
  double vv = plateau::dot(d, q) * inv;
  if (vv < 1e-10 || uu + vv > 1 - 1e-10) {
    if (vv > -1e-7 && uu + vv < 1 + 1e-7) *degenerate = true;
    return std::nullopt;
  }
  double t = plateau::dot(e2, q) * inv;
  if (t <= 1e-12) return std::nullopt;
  return t;
}

// 5-ray parity vote: inside iff the majority of rays cross an odd number of
// triangles.
inline bool inside_by_ray_parity(const Vec3& p, const std::vector<Vec3>& verts,
                                 const std::vector<Tri>& tris, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  int votes_in = 0, votes = 0;
  int attempts = 0;
  while (votes < 5 && attempts < 200) {
    ++attempts;
    Vec3 d;
    do {
      d = Vec3{uni(rng), uni(rng), uni(rng)};
    } while (plateau::norm2(d) < 0.1);
    d = plateau::normalized(d);
    bool degenerate = false;
    int crossings = 0;
    for (const auto& t : tris) {
      if (ray_hits_triangle(p, d, verts[t[0]], verts[t[1]], verts[t[2]], &degenerate)) ++crossings;
      if (degenerate) break;
    }
    if (degenerate) continue;
    ++votes;
    if (crossings % 2 == 1) ++votes_in;
  }
  return votes_in * 2 > votes;
}

// Brute-force all-pairs triangle intersection existence check (Moller-style
// interval test in plain fp), skipping pairs sharing an index or coordinate.
inline bool tri_pair_intersects(const Vec3& a0, const Vec3& a1, const Vec3& a2, const Vec3& b0,
                                const Vec3& b1, const Vec3& b2) {
  auto side = [](const Vec3& p, const Vec3& q, const Vec3& r, const Vec3& x) {
    return plateau::dot(x - p, plateau::cross(q - p, r - p));
  };
  double db0 = side(a0, a1, a2, b0), db1 = side(a0, a1, a2, b1), db2 = side(a0, a1, a2, b2);
  if ((db0 > 0 && db1 > 0 && db2 > 0) || (db0 < 0 && db1 < 0 && db2 < 0)) return false;
  double da0 = side(b0, b1, b2, a0), da1 = side(b0, b1, b2, a1), da2 = side(b0, b1, b2, a2);
  if ((da0 > 0 && da1 > 0 && da2 > 0) || (da0 < 0 && da1 < 0 && da2 < 0)) return false;

  // Segment-vs-triangle on all six edges.
  auto seg_tri = [&](const Vec3& p, const Vec3& q, const Vec3& ta, const Vec3& tb,
                     const Vec3& tc) {
    double sp = side(ta, tb, tc, p), sq = side(ta, tb, tc, q);
    if ((sp > 0 && sq > 0) || (sp < 0 && sq < 0)) return false;
    if (sp == sq) return false;
    double v1 = side(p, q, ta, tb);
    double v2 = side(p, q, tb, tc);
    double v3 = side(p, q, tc, ta);
    return (v1 > 0 && v2 > 0 && v3 > 0) || (v1 < 0 && v2 < 0 && v3 < 0);
  };
  return seg_tri(a0, a1, b0, b1, b2) || seg_tri(a1, a2, b0, b1, b2) || seg_tri(a2, a0, b0, b1, b2) ||
         seg_tri(b0, b1, a0, a1, a2) || seg_tri(b1, b2, a0, a1, a2) || seg_tri(b2, b0, a0, a1, a2);
}

inline bool mesh_self_intersects_brute(const std::vector<Vec3>& verts,
                                       const std::vector<Tri>& tris) {
  for (size_t i = 0; i < tris.size(); ++i) {
    for (size_t j = i + 1; j < tris.size(); ++j) {
      bool adjacent = false;
      for (int u = 0; u < 3 && !adjacent; ++u)
        for (int v = 0; v < 3; ++v)
          if (tris[i][u] == tris[j][v] || verts[tris[i][u]] == verts[tris[j][v]]) {
            adjacent = true;
            break;
          }
      if (adjacent) continue;
      if (tri_pair_intersects(verts[tris[i][0]], verts[tris[i][1]], verts[tris[i][2]],
                              verts[tris[j][0]], verts[tris[j][1]], verts[tris[j][2]]))
        return true;
    }
  }
  return false;
}

// Exterior-angle sum computed directly (total curvature oracle).
inline double angle_sum(const plateau::JordanCurve& c) {
  double s = 0.0;
  for (int i = 0; i < c.size(); ++i) {
    Vec3 e0 = c.at(i + 1) - c.at(i);
    Vec3 e1 = c.at(i + 2) - c.at(i + 1);
    s += std::acos(std::clamp(plateau::dot(plateau::normalized(e0), plateau::normalized(e1)),
                              -1.0, 1.0));
  }
  return s;
}

}  // namespace oracle
