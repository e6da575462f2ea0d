#include "plateau/gallery.hpp"

#include "plateau/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace plateau {
namespace gallery {

namespace {

constexpr double kPi = std::numbers::pi;

// Piecewise-linear resampling of a control polyline into `count` vertices
// (endpoints included), uniform in arc length.
std::vector<Vec3> resample(const std::vector<Vec3>& control, int count) {
  std::vector<double> cum{0.0};
  for (size_t i = 0; i + 1 < control.size(); ++i)
    cum.push_back(cum.back() + dist(control[i], control[i + 1]));
  double total = cum.back();
  std::vector<Vec3> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    double s = total * k / double(count - 1);
    size_t seg = 0;
    while (seg + 2 < cum.size() && cum[seg + 1] < s) ++seg;
    double den = cum[seg + 1] - cum[seg];
    double t = den > 0 ? (s - cum[seg]) / den : 0.0;
    out.push_back(control[seg] + (control[seg + 1] - control[seg]) * t);
  }
  return out;
}

}  // namespace

JordanCurve circle(double radius, int n) {
  if (radius <= 0 || n < 8) throw InvalidInput("circle: radius > 0 and n >= 8 required");
  JordanCurve c;
  c.vertices.reserve(n);
  for (int i = 0; i < n; ++i) {
    double t = 2 * kPi * i / n;
    c.vertices.push_back({radius * std::cos(t), radius * std::sin(t), 0.0});
  }
  return c;
}

JordanCurve sphere_wave(double radius, int lobes, double amplitude, int n) {
  if (radius <= 0 || n < 8) throw InvalidInput("sphere_wave: radius > 0 and n >= 8 required");
  if (std::abs(amplitude) >= kPi / 2) throw InvalidInput("sphere_wave: amplitude < pi/2 required");
  JordanCurve c;
  c.vertices.reserve(n);
  for (int i = 0; i < n; ++i) {
    double t = 2 * kPi * i / n;
    double lat = amplitude * std::sin(lobes * t);
    c.vertices.push_back({radius * std::cos(lat) * std::cos(t),
                          radius * std::cos(lat) * std::sin(t), radius * std::sin(lat)});
  }
  return c;
}

JordanCurve hooked_circle(double radius, double hook_depth, double hook_width, int n) {
  if (radius <= 0 || n < 16) throw InvalidInput("hooked_circle: radius > 0 and n >= 16 required");
  if (hook_depth <= 0.0) return circle(radius, n);

  double r = radius, d = hook_depth;
  double wa = std::max(hook_width / radius, 4 * kPi / n);  // angular half-width of the mouth

  // Hook control polyline: dive under the spanning disk just inside the rim,
  // run inward, poke up through the plane around 0.35 r, return above the
  // disk and descend to the far rim point. One transversal core crossing.
  double yb = -r * std::sin(wa), ya = r * std::sin(wa);
  auto lerp_y = [&](double t) { return yb + (ya - yb) * t; };
  std::vector<Vec3> control = {
      {r * std::cos(wa), yb, 0.0},
      {0.96 * r, lerp_y(0.12), -0.42 * d},
      {0.70 * r, lerp_y(0.28), -0.58 * d},
      {0.40 * r, lerp_y(0.42), -0.30 * d},
      {0.34 * r, lerp_y(0.52), 0.30 * d},   // poke through z = 0 near 0.35 r
      {0.55 * r, lerp_y(0.66), 0.55 * d},
      {0.85 * r, lerp_y(0.84), 0.38 * d},
      {r * std::cos(wa), ya, 0.0},
  };

  int n_hook = std::max(12, n / 6);
  int n_arc = n - n_hook;
  JordanCurve c;
  // Main arc from +wa around to -wa (counterclockwise).
  for (int i = 0; i < n_arc; ++i) {
    double t = wa + (2 * kPi - 2 * wa) * i / n_arc;
    c.vertices.push_back({r * std::cos(t), r * std::sin(t), 0.0});
  }
  auto hook_pts = resample(control, n_hook + 2);
  for (int i = 1; i + 1 < int(hook_pts.size()); ++i) c.vertices.push_back(hook_pts[i]);
  return c;
}

namespace {

// Shared geometry of the slit-can family (also used by the tests).
struct CanShape {
  double R, H, wave, g_half;
  double hook_halfheight, hook_depth;

  double ztop(double theta) const { return H + wave * std::cos(2 * theta); }
  double zbot(double theta) const { return -H - wave * std::cos(2 * theta); }
};

CanShape can_shape(double r, double w) {
  CanShape s;
  s.R = r / 4.0;
  s.H = 0.62 * s.R;
  s.wave = 0.12 * s.R;
  s.g_half = std::max(0.05, 0.35 * w / s.R);
  s.hook_halfheight = std::min(1.0 * w, 0.5 * s.H);
  s.hook_depth = std::min(1.2 * w, 0.4 * s.R);
  return s;
}

}  // namespace

JordanCurve weak_extreme_rw(double r, double w, int n) {
  if (r <= 0 || w <= 0 || w >= r) throw InvalidInput("weak_extreme_rw: 0 < w < r required");
  if (n < 80) throw InvalidInput("weak_extreme_rw: n >= 80 required");
  CanShape s = can_shape(r, w);
  double R = s.R;

  // 2*n_rim + 2*n_conn - 4 vertices total (rim/connector corners shared).
  int n_rim = (n + 4) * 2 / 5;
  int n_conn = (n + 4) / 2 - n_rim;
  if (n_conn < 12) {
    n_conn = 12;
    n_rim = (n + 4) / 2 - n_conn;
  }

  JordanCurve c;
  double th0 = s.g_half, th1 = 2 * kPi - s.g_half;

  auto rim_point = [&](double t, bool top) {
    return Vec3{R * std::cos(t), R * std::sin(t), top ? s.ztop(t) : s.zbot(t)};
  };
  auto connector_point = [&](double theta, double t01, bool downward) {
    double zt = s.ztop(theta), zb = s.zbot(theta);
    double z = downward ? zt + (zb - zt) * t01 : zb + (zt - zb) * t01;
    double dip = 0.0;
    if (std::abs(z) < s.hook_halfheight) {
      double u = z / s.hook_halfheight;  // -1..1
      dip = s.hook_depth * 0.5 * (1.0 + std::cos(kPi * u));
    }
    double rr = R - dip;
    return Vec3{rr * std::cos(theta), rr * std::sin(theta), z};
  };

  // Top rim from th0 to th1 inclusive, counterclockwise.
  for (int i = 0; i < n_rim; ++i)
    c.vertices.push_back(rim_point(th0 + (th1 - th0) * i / double(n_rim - 1), true));
  // Right slit edge (theta = th1), top corner already placed.
  for (int i = 1; i < n_conn; ++i)
    c.vertices.push_back(connector_point(th1, double(i) / (n_conn - 1), true));
  // Bottom rim, traversed backward; corner already placed.
  for (int i = 1; i < n_rim; ++i)
    c.vertices.push_back(rim_point(th1 + (th0 - th1) * i / double(n_rim - 1), false));
  // Left slit edge (theta = th0) upward; both corners already placed or first.
  for (int i = 1; i + 1 < n_conn; ++i)
    c.vertices.push_back(connector_point(th0, double(i) / (n_conn - 1), false));
  return c;
}

JordanCurve add_thin_hook(const JordanCurve& curve, double attach_param, double depth,
                          double width) {
  if (depth <= 0.0) return curve;
  int n = curve.size();
  if (n < 8) throw InvalidInput("add_thin_hook: curve too small");

  // Attachment vertex by arc length.
  double total = curve.length();
  double target = std::fmod(std::max(attach_param, 0.0), 1.0) * total;
  int k = 0;
  double acc = 0.0;
  while (k < n - 1 && acc + dist(curve.at(k), curve.at(k + 1)) < target) {
    acc += dist(curve.at(k), curve.at(k + 1));
    ++k;
  }
  // Remove enough vertices to open a mouth of about `width`.
  int m = 1;
  while (m < n / 4 && dist(curve.at(k), curve.at(k + m)) < width) ++m;

  Vec3 A = curve.at(k), B = curve.at(k + m);
  Vec3 T = normalized(B - A);
  Vec3 centroid = curve.centroid();
  Vec3 mid = (A + B) * 0.5;
  Vec3 toward = centroid - mid;
  Vec3 u = normalized(toward - T * dot(toward, T));
  if (norm(u) == 0) throw InvalidInput("add_thin_hook: degenerate attachment frame");
  Vec3 kv = normalized(cross(T, u));

  // Dive / run / poke-back profile in (u, k) coordinates times depth, with a
  // linear sweep in T keeping the legs `width` apart.
  struct UK {
    double u, k;
  };
  std::vector<UK> profile = {{0.0, 0.0},  {0.45, -0.05}, {0.85, -0.07}, {1.0, 0.05},
                             {0.92, 0.30}, {0.62, 0.46},  {0.30, 0.46},  {0.0, 0.0}};
  std::vector<Vec3> control;
  for (size_t i = 0; i < profile.size(); ++i) {
    double t = double(i) / (profile.size() - 1);
    Vec3 base = A + (B - A) * t;
    control.push_back(base + u * (depth * profile[i].u) + kv * (depth * profile[i].k));
  }
  int n_hook = std::max(14, int(std::ceil(depth / std::max(width, 1e-9))) + 6);
  n_hook = std::min(n_hook, 2 * n);
  auto pts = resample(control, n_hook + 2);

  JordanCurve out;
  for (int i = 0; i <= k; ++i) out.vertices.push_back(curve.at(i));
  for (int i = 1; i + 1 < int(pts.size()); ++i) out.vertices.push_back(pts[i]);
  for (int i = k + m; i < n; ++i) out.vertices.push_back(curve.at(i));

  auto rep = validate_curve(out);
  if (!rep.simple) throw SpliceSelfIntersect("add_thin_hook: spliced curve not simple");
  return out;
}

JordanCurve add_thin_tail(const JordanCurve& curve, const Vec3& direction, double length,
                          double width) {
  if (length <= 0.0) return curve;
  Vec3 dir = normalized(direction);
  if (norm(dir) == 0) throw InvalidInput("add_thin_tail: zero direction");
  int n = curve.size();

  // Attach at the vertex extremal along the direction.
  int k = 0;
  double best = std::numeric_limits<double>::lowest();
  for (int i = 0; i < n; ++i) {
    double d = dot(curve.vertices[i], dir);
    if (d > best) {
      best = d;
      k = i;
    }
  }
  Vec3 A = curve.at(k), B = curve.at(k + 1);
  Vec3 T = normalized(B - A);
  Vec3 lateral = normalized(T - dir * dot(dir, T));
  if (norm(lateral) == 0) lateral = normalized(cross(dir, Vec3{0.37, 0.61, 0.71}));

  Vec3 baseA = A + T * std::min(0.25 * dist(A, B), width);
  Vec3 baseB = A + T * std::min(0.75 * dist(A, B), 2 * width);
  Vec3 tipA = baseA + dir * length;
  Vec3 tipB = baseB + dir * length;

  std::vector<Vec3> control = {baseA, tipA, tipA + lateral * (0.5 * width) + dir * (0.2 * width),
                               tipB, baseB};
  int n_tail = std::max(10, int(std::ceil(length / std::max(width, 1e-9))));
  n_tail = std::min(n_tail, 3 * n);
  auto pts = resample(control, n_tail);

  JordanCurve out;
  for (int i = 0; i <= k; ++i) out.vertices.push_back(curve.at(i));
  for (const auto& p : pts) out.vertices.push_back(p);
  for (int i = k + 1; i < n; ++i) out.vertices.push_back(curve.at(i));

  auto rep = validate_curve(out);
  if (!rep.simple) throw SpliceSelfIntersect("add_thin_tail: spliced curve not simple");
  return out;
}

JordanCurve trefoil(double scale, int n) {
  if (n < 60) throw InvalidInput("trefoil: n >= 60 required");
  JordanCurve c;
  c.vertices.reserve(n);
  for (int i = 0; i < n; ++i) {
    double t = 2 * kPi * i / n;
    c.vertices.push_back(Vec3{std::sin(t) + 2 * std::sin(2 * t),
                              std::cos(t) - 2 * std::cos(2 * t), -std::sin(3 * t)} *
                         (scale / 3.0));
  }
  return c;
}

JordanCurve fig3_config(int n) {
  if (n < 60) throw InvalidInput("fig3_config: n >= 60 required");
  // Spherical spiral: latitude -62 deg .. +48 deg over 640 deg of longitude,
  // closed by a straight chord. The chord is interior, and every short hull
  // path between its endpoints crosses the spiral.
  double lat0 = -62.0 * kPi / 180.0, lat1 = 48.0 * kPi / 180.0;
  double lon_span = 640.0 * kPi / 180.0;
  int n_spiral = int(std::floor(n * 0.85));
  int n_chord = n - n_spiral;

  JordanCurve c;
  for (int i = 0; i < n_spiral; ++i) {
    double t = double(i) / (n_spiral - 1);
    double lat = lat0 + (lat1 - lat0) * t;
    double lon = lon_span * t;
    c.vertices.push_back({std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon),
                          std::sin(lat)});
  }
  Vec3 end = c.vertices.back();
  Vec3 start = c.vertices.front();
  for (int i = 1; i <= n_chord; ++i) {
    double t = double(i) / (n_chord + 1);
    c.vertices.push_back(end + (start - end) * t);
  }
  return c;
}

JordanCurve generate(const CurveSpec& spec) {
  const auto& p = spec.params;
  auto need = [&](size_t k) {
    if (p.size() != k)
      throw InvalidInput("generate " + spec.family + ": expected " + std::to_string(k) +
                         " parameters, got " + std::to_string(p.size()));
  };
  if (spec.family == "circle") {
    need(1);
    return circle(p[0], spec.n);
  }
  if (spec.family == "sphere_wave") {
    need(3);
    return sphere_wave(p[0], int(p[1]), p[2], spec.n);
  }
  if (spec.family == "hooked_circle") {
    need(3);
    return hooked_circle(p[0], p[1], p[2], spec.n);
  }
  if (spec.family == "weak_extreme_rw") {
    need(2);
    return weak_extreme_rw(p[0], p[1], spec.n);
  }
  if (spec.family == "trefoil") {
    need(1);
    return trefoil(p[0], spec.n);
  }
  if (spec.family == "fig3") {
    need(0);
    return fig3_config(spec.n);
  }
  throw InvalidInput("generate: unknown family '" + spec.family + "'");
}

}  // namespace gallery
}  // namespace plateau
