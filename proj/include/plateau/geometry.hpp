#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace plateau {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3() = default;
  Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  double& operator[](int i) { return (&x)[i]; }
  double operator[](int i) const { return (&x)[i]; }

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

  bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }
  bool operator!=(const Vec3& o) const { return !(*this == o); }
  bool operator<(const Vec3& o) const {
    if (x != o.x) return x < o.x;
    if (y != o.y) return y < o.y;
    return z < o.z;
  }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm2(const Vec3& v) { return dot(v, v); }
inline double norm(const Vec3& v) { return std::sqrt(norm2(v)); }
inline double dist(const Vec3& a, const Vec3& b) { return norm(a - b); }
inline double dist2(const Vec3& a, const Vec3& b) { return norm2(a - b); }

inline Vec3 normalized(const Vec3& v) {
  double n = norm(v);
  return n > 0.0 ? v / n : Vec3{0, 0, 0};
}

// Scalar triple product (a-d)·((b-d)×(c-d)); sign gives orientation of the tetra.
inline double triple(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  return dot(a - d, cross(b - d, c - d));
}

inline double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 0.5 * norm(cross(b - a, c - a));
}
inline Vec3 triangle_normal(const Vec3& a, const Vec3& b, const Vec3& c) {
  return normalized(cross(b - a, c - a));
}

struct AABB {
  Vec3 lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
          std::numeric_limits<double>::max()};
  Vec3 hi{std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest(),
          std::numeric_limits<double>::lowest()};

  void expand(const Vec3& p) {
    for (int i = 0; i < 3; ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  }
  void expand(const AABB& b) {
    expand(b.lo);
    expand(b.hi);
  }
  bool overlaps(const AABB& b, double pad = 0.0) const {
    for (int i = 0; i < 3; ++i)
      if (lo[i] - pad > b.hi[i] || hi[i] + pad < b.lo[i]) return false;
    return true;
  }
  bool contains(const Vec3& p, double pad = 0.0) const {
    for (int i = 0; i < 3; ++i)
      if (p[i] < lo[i] - pad || p[i] > hi[i] + pad) return false;
    return true;
  }
  Vec3 center() const { return (lo + hi) * 0.5; }
  double diagonal() const { return dist(lo, hi); }
  double dist2_to(const Vec3& p) const {
    double d2 = 0.0;
    for (int i = 0; i < 3; ++i) {
      double d = 0.0;
      if (p[i] < lo[i]) d = lo[i] - p[i];
      else if (p[i] > hi[i]) d = p[i] - hi[i];
      d2 += d * d;
    }
    return d2;
  }
};

inline AABB bounding_box(const std::vector<Vec3>& pts) {
  AABB b;
  for (const auto& p : pts) b.expand(p);
  return b;
}

// All tolerances in the toolkit are relative to the bounding-box diagonal L
// of the primary input curve. PLATEAU_TOL_SCALE / --tol-scale multiply them.
struct Tolerances {
  double L = 1.0;           // bbox diagonal of the reference geometry
  double scale = 1.0;       // user tolerance scale
  double point() const { return 1e-9 * L * scale; }
  double surface() const { return 1e-7 * L * scale; }

  static Tolerances for_points(const std::vector<Vec3>& pts, double scale = 1.0);
};

// Closest point on segment [a,b] to p.
Vec3 closest_point_segment(const Vec3& p, const Vec3& a, const Vec3& b);
// Closest point on triangle (a,b,c) to p.
Vec3 closest_point_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);
// Minimum distance between segments [p1,q1] and [p2,q2].
double segment_segment_distance(const Vec3& p1, const Vec3& q1, const Vec3& p2, const Vec3& q2);

// Best-fit plane through points (centroid + unit normal, least squares).
struct Plane {
  Vec3 origin;
  Vec3 normal;
  double signed_distance(const Vec3& p) const { return dot(p - origin, normal); }
};
Plane best_fit_plane(const std::vector<Vec3>& pts);

// True if all points lie within eps of their common best-fit plane.
bool coplanar_within(const std::vector<Vec3>& pts, double eps, Plane* out_plane = nullptr);

}  // namespace plateau
