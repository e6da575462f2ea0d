#include "plateau/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace plateau {

double JordanCurve::length() const {
  double s = 0.0;
  for (int i = 0; i < size(); ++i) s += dist(segment_start(i), segment_end(i));
  return s;
}

Vec3 JordanCurve::centroid() const {
  Vec3 c{0, 0, 0};
  for (const auto& v : vertices) c += v;
  return size() ? c / double(size()) : c;
}

namespace {

struct SegBox {
  AABB box;
  int index;
};

}  // namespace

ValidationReport validate_curve(const JordanCurve& curve, double tol_scale) {
  ValidationReport rep;
  int n = curve.size();
  rep.vertex_count = n;
  rep.enough_vertices = n >= 8;
  if (!rep.enough_vertices) rep.failures.push_back("below minimum vertex count (8)");
  if (n < 2) {
    rep.min_segment_length = 0.0;
    rep.valid = false;
    return rep;
  }

  Tolerances tol = curve.tolerances(tol_scale);
  double min_len = std::numeric_limits<double>::max();
  for (int i = 0; i < n; ++i) min_len = std::min(min_len, dist(curve.segment_start(i), curve.segment_end(i)));
  rep.min_segment_length = min_len;
  rep.vertices_distinct = min_len > tol.point();
  if (!rep.vertices_distinct) rep.failures.push_back("consecutive vertices not distinct");

  // Simplicity: non-adjacent segments must stay outside point tolerance.
  // Sweep on x to avoid the full quadratic scan.
  rep.simple = true;
  if (rep.vertices_distinct && n >= 4) {
    std::vector<SegBox> segs(n);
    for (int i = 0; i < n; ++i) {
      segs[i].index = i;
      segs[i].box.expand(curve.segment_start(i));
      segs[i].box.expand(curve.segment_end(i));
    }
    std::sort(segs.begin(), segs.end(),
              [](const SegBox& a, const SegBox& b) { return a.box.lo.x < b.box.lo.x; });
    double pad = tol.point();
    for (size_t si = 0; si < segs.size() && rep.simple; ++si) {
      for (size_t sj = si + 1; sj < segs.size(); ++sj) {
        if (segs[sj].box.lo.x > segs[si].box.hi.x + pad) break;
        int i = segs[si].index, j = segs[sj].index;
        int d = std::abs(i - j);
        if (d <= 1 || d == n - 1) continue;  // adjacent along the loop
        if (!segs[si].box.overlaps(segs[sj].box, pad)) continue;
        double dd = segment_segment_distance(curve.segment_start(i), curve.segment_end(i),
                                             curve.segment_start(j), curve.segment_end(j));
        if (dd <= pad) {
          rep.simple = false;
          rep.failures.push_back("segment intersection between segments " + std::to_string(i) +
                                 " and " + std::to_string(j));
          break;
        }
      }
    }
  } else if (n < 4) {
    rep.simple = rep.vertices_distinct;
  }

  rep.valid = rep.enough_vertices && rep.vertices_distinct && rep.simple;
  return rep;
}

double total_curvature(const JordanCurve& curve) {
  int n = curve.size();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    Vec3 e0 = curve.at(i + 1) - curve.at(i);
    Vec3 e1 = curve.at(i + 2) - curve.at(i + 1);
    double angle = std::atan2(norm(cross(e0, e1)), dot(e0, e1));
    sum += angle;
  }
  return sum;
}

namespace {

// Gauss-integral contribution of one segment pair: the signed solid angle of
// the spherical quadrilateral swept by the difference directions
// (Klenin & Langowski, method 1a).
double pair_solid_angle(const Vec3& p1, const Vec3& p2, const Vec3& p3, const Vec3& p4) {
  Vec3 r13 = p3 - p1, r14 = p4 - p1, r23 = p3 - p2, r24 = p4 - p2;
  Vec3 n1 = cross(r13, r14);
  Vec3 n2 = cross(r14, r24);
  Vec3 n3 = cross(r24, r23);
  Vec3 n4 = cross(r23, r13);
  double l1 = norm(n1), l2 = norm(n2), l3 = norm(n3), l4 = norm(n4);
  const double tiny = 1e-300;
  if (l1 < tiny || l2 < tiny || l3 < tiny || l4 < tiny) return 0.0;  // coplanar pair
  n1 = n1 / l1;
  n2 = n2 / l2;
  n3 = n3 / l3;
  n4 = n4 / l4;
  auto clamped_asin = [](double v) { return std::asin(std::clamp(v, -1.0, 1.0)); };
  double omega = clamped_asin(dot(n1, n2)) + clamped_asin(dot(n2, n3)) +
                 clamped_asin(dot(n3, n4)) + clamped_asin(dot(n4, n1));
  Vec3 r12 = p2 - p1, r34 = p4 - p3;
  double s = dot(cross(r34, r12), r13);
  return s >= 0.0 ? omega : -omega;
}

}  // namespace

double linking_integral(const JordanCurve& a, const JordanCurve& b) {
  double sum = 0.0;
  int na = a.size(), nb = b.size();
  for (int i = 0; i < na; ++i) {
    Vec3 p1 = a.segment_start(i), p2 = a.segment_end(i);
    for (int j = 0; j < nb; ++j) {
      sum += pair_solid_angle(p1, p2, b.segment_start(j), b.segment_end(j));
    }
  }
  return sum / (4.0 * std::numbers::pi);
}

int linking_number(const JordanCurve& a, const JordanCurve& b, double tol_scale) {
  std::vector<Vec3> all = a.vertices;
  all.insert(all.end(), b.vertices.begin(), b.vertices.end());
  Tolerances tol = Tolerances::for_points(all, tol_scale);

  double mind = std::numeric_limits<double>::max();
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j)
      mind = std::min(mind, segment_segment_distance(a.segment_start(i), a.segment_end(i),
                                                     b.segment_start(j), b.segment_end(j)));
  if (mind <= tol.surface())
    throw CurvesTooClose("linking_number: curves within tolerance of each other (d=" +
                         std::to_string(mind) + ")");

  double lk = linking_integral(a, b);
  double rounded = std::round(lk);
  if (std::abs(lk - rounded) >= 0.1)
    throw NonIntegerResult("linking_number: residual " + std::to_string(std::abs(lk - rounded)) +
                           " >= 0.1");
  return int(rounded);
}

}  // namespace plateau
