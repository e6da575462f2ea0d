#include "plateau/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>

namespace plateau {

Tolerances Tolerances::for_points(const std::vector<Vec3>& pts, double scale) {
  Tolerances t;
  t.scale = scale;
  if (!pts.empty()) {
    double d = bounding_box(pts).diagonal();
    if (d > 0.0) t.L = d;
  }
  return t;
}

Vec3 closest_point_segment(const Vec3& p, const Vec3& a, const Vec3& b) {
  Vec3 ab = b - a;
  double len2 = norm2(ab);
  if (len2 <= 0.0) return a;
  double t = dot(p - a, ab) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return a + ab * t;
}

// Ericson, "Real-Time Collision Detection", 5.1.5.
Vec3 closest_point_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  Vec3 ab = b - a, ac = c - a, ap = p - a;
  double d1 = dot(ab, ap), d2 = dot(ac, ap);
  if (d1 <= 0.0 && d2 <= 0.0) return a;

  Vec3 bp = p - b;
  double d3 = dot(ab, bp), d4 = dot(ac, bp);
  if (d3 >= 0.0 && d4 <= d3) return b;

  double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
    double v = d1 / (d1 - d3);
    return a + ab * v;
  }

  Vec3 cp = p - c;
  double d5 = dot(ab, cp), d6 = dot(ac, cp);
  if (d6 >= 0.0 && d5 <= d6) return c;

  double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
    double w = d2 / (d2 - d6);
    return a + ac * w;
  }

  double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return b + (c - b) * w;
  }

  double denom = 1.0 / (va + vb + vc);
  double v = vb * denom, w = vc * denom;
  return a + ab * v + ac * w;
}

double segment_segment_distance(const Vec3& p1, const Vec3& q1, const Vec3& p2, const Vec3& q2) {
  // Ericson 5.1.9 (closest points of two segments).
  Vec3 d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
  double a = norm2(d1), e = norm2(d2), f = dot(d2, r);
  double s = 0.0, t = 0.0;
  const double eps = 1e-30;
  if (a <= eps && e <= eps) return dist(p1, p2);
  if (a <= eps) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    double c = dot(d1, r);
    if (e <= eps) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      double b = dot(d1, d2);
      double denom = a * e - b * b;
      if (denom > eps) s = std::clamp((b * f - c * e) / denom, 0.0, 1.0);
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  Vec3 c1 = p1 + d1 * s, c2 = p2 + d2 * t;
  return dist(c1, c2);
}

Plane best_fit_plane(const std::vector<Vec3>& pts) {
  Plane pl;
  if (pts.empty()) {
    pl.normal = {0, 0, 1};
    return pl;
  }
  Vec3 c{0, 0, 0};
  for (const auto& p : pts) c += p;
  c = c / double(pts.size());
  pl.origin = c;

  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto& p : pts) {
    Eigen::Vector3d d(p.x - c.x, p.y - c.y, p.z - c.z);
    cov += d * d.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
  Eigen::Vector3d n = es.eigenvectors().col(0);  // smallest eigenvalue
  pl.normal = normalized(Vec3{n.x(), n.y(), n.z()});
  if (pl.normal == Vec3{0, 0, 0}) pl.normal = {0, 0, 1};
  return pl;
}

bool coplanar_within(const std::vector<Vec3>& pts, double eps, Plane* out_plane) {
  Plane pl = best_fit_plane(pts);
  if (out_plane) *out_plane = pl;
  for (const auto& p : pts)
    if (std::abs(pl.signed_distance(p)) > eps) return false;
  return true;
}

}  // namespace plateau
