#include "doctest.h"

#include "plateau/curve.hpp"
#include "plateau/intersect.hpp"
#include "plateau/predicates.hpp"
#include "plateau/solver.hpp"

#include "oracles.hpp"

#include <numbers>
#include <random>

using namespace plateau;

namespace {

JordanCurve make_circle(double r, int n, Vec3 center = {0, 0, 0}, Vec3 axis = {0, 0, 1}) {
  JordanCurve c;
  Vec3 seed = std::abs(axis.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  Vec3 u = normalized(cross(axis, seed));
  Vec3 v = normalized(cross(axis, u));
  for (int i = 0; i < n; ++i) {
    double t = 2.0 * std::numbers::pi * i / n;
    c.vertices.push_back(center + u * (r * std::cos(t)) + v * (r * std::sin(t)));
  }
  return c;
}

JordanCurve make_trefoil(double scale, int n) {
  JordanCurve c;
  for (int i = 0; i < n; ++i) {
    double t = 2.0 * std::numbers::pi * i / n;
    c.vertices.push_back(Vec3{std::sin(t) + 2.0 * std::sin(2 * t),
                              std::cos(t) - 2.0 * std::cos(2 * t), -std::sin(3 * t)} *
                         (scale / 3.0));
  }
  return c;
}

ClosedSurface make_sphere_mesh(double r, int subdiv) {
  // Octahedron subdivision projected to the sphere.
  ClosedSurface s;
  s.vertices = {{r, 0, 0}, {-r, 0, 0}, {0, r, 0}, {0, -r, 0}, {0, 0, r}, {0, 0, -r}};
  s.triangles = {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4},
                 {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
  for (int l = 0; l < subdiv; ++l) {
    std::map<std::pair<int, int>, int> mids;
    auto mid = [&](int a, int b) {
      auto key = std::minmax(a, b);
      auto it = mids.find({key.first, key.second});
      if (it != mids.end()) return it->second;
      Vec3 m = normalized((s.vertices[a] + s.vertices[b]) * 0.5) * r;
      int idx = int(s.vertices.size());
      s.vertices.push_back(m);
      mids.emplace(std::pair<int, int>(key.first, key.second), idx);
      return idx;
    };
    std::vector<Tri> out;
    for (const auto& t : s.triangles) {
      int ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
      out.push_back({t[0], ab, ca});
      out.push_back({ab, t[1], bc});
      out.push_back({ca, bc, t[2]});
      out.push_back({ab, bc, ca});
    }
    s.triangles = std::move(out);
  }
  return s;
}

}  // namespace

TEST_CASE("validate_curve basics") {
  auto circle = make_circle(1.0, 64);
  auto rep = validate_curve(circle);
  CHECK(rep.valid);
  CHECK(rep.simple);

  // Figure-eight: two lobes sharing a crossing.
  JordanCurve fig8;
  for (int i = 0; i < 16; ++i) {
    double t = 2.0 * std::numbers::pi * i / 16;
    fig8.vertices.push_back({std::sin(2 * t), std::sin(t), 0.0});
  }
  auto rep8 = validate_curve(fig8);
  CHECK_FALSE(rep8.valid);
  CHECK_FALSE(rep8.simple);

  JordanCurve tiny;
  tiny.vertices = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
  auto rept = validate_curve(tiny);
  CHECK_FALSE(rept.valid);
  CHECK_FALSE(rept.enough_vertices);
}

TEST_CASE("total_curvature: planar convex polygons give exactly 2*pi") {
  for (int n : {8, 17, 64, 200}) {
    auto c = make_circle(1.7, n);
    CHECK(total_curvature(c) == doctest::Approx(2 * std::numbers::pi).epsilon(1e-12));
  }
  JordanCurve square;
  square.vertices = {{0, 0, 0}, {0.5, 0, 0}, {1, 0, 0}, {1, 0.5, 0}, {1, 1, 0},
                     {0.5, 1, 0}, {0, 1, 0}, {0, 0.5, 0}};
  CHECK(total_curvature(square) == doctest::Approx(2 * std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("total_curvature: trefoil exceeds 4*pi (Fary-Milnor), matches angle-sum oracle") {
  auto t = make_trefoil(1.0, 120);
  double k = total_curvature(t);
  CHECK(k > 4 * std::numbers::pi);
  CHECK(k == doctest::Approx(oracle::angle_sum(t)).epsilon(1e-10));
}

TEST_CASE("total_curvature: Fenchel floor over random closed curves") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(-1, 1);
  for (int trial = 0; trial < 25; ++trial) {
    JordanCurve c;
    for (int i = 0; i < 24; ++i) c.vertices.push_back({uni(rng), uni(rng), uni(rng)});
    CHECK(total_curvature(c) >= 2 * std::numbers::pi - 1e-9);
  }
}

TEST_CASE("linking_number: Hopf link and separated circles") {
  auto a = make_circle(1.0, 48, {0, 0, 0}, {0, 0, 1});
  auto b = make_circle(1.0, 48, {1, 0, 0}, {0, 1, 0});
  CHECK(std::abs(linking_number(a, b)) == 1);

  auto far_b = make_circle(1.0, 48, {10, 0, 0}, {0, 0, 1});
  CHECK(linking_number(a, far_b) == 0);
}

TEST_CASE("linking_number throws when curves touch") {
  auto a = make_circle(1.0, 32);
  auto b = make_circle(1.0, 32);  // identical
  CHECK_THROWS_AS(linking_number(a, b), CurvesTooClose);
}

TEST_CASE("linking_number vs projection-crossing oracle on random pairs; symmetry") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> uni(-1, 1);
  int tested = 0;
  for (int trial = 0; tested < 50 && trial < 200; ++trial) {
    Vec3 c1{uni(rng), uni(rng), uni(rng)};
    Vec3 c2{uni(rng), uni(rng), uni(rng)};
    Vec3 ax1 = normalized(Vec3{uni(rng), uni(rng), uni(rng)});
    Vec3 ax2 = normalized(Vec3{uni(rng), uni(rng), uni(rng)});
    if (norm(ax1) == 0 || norm(ax2) == 0) continue;
    auto a = make_circle(1.0 + 0.3 * uni(rng), 40, c1 * 1.5, ax1);
    auto b = make_circle(1.0 + 0.3 * uni(rng), 40, c2 * 1.5, ax2);
    int lk;
    try {
      lk = linking_number(a, b);
    } catch (const Error&) {
      continue;
    }
    ++tested;
    CHECK(lk == oracle::linking_by_projection(a, b, 1000 + trial));
    CHECK(lk == linking_number(b, a));
  }
  CHECK(tested == 50);
}

TEST_CASE("segment_triangle_intersect transversal puncture") {
  Vec3 a{-1, -1, 0}, b{2, -1, 0}, c{0, 2, 0};
  auto hit = segment_triangle_intersect({0, 0, -1}, {0, 0, 1}, a, b, c);
  REQUIRE(hit.has_value());
  CHECK(dist(*hit, Vec3{0, 0, 0}) < 1e-14);
  CHECK_FALSE(segment_triangle_intersect({0, 0, 1}, {0, 0, 3}, a, b, c).has_value());
  CHECK_FALSE(segment_triangle_intersect({5, 5, -1}, {5, 5, 1}, a, b, c).has_value());
}

TEST_CASE("mesh_self_intersections: flat fan empty; forced crossing found") {
  auto circle = make_circle(1.0, 32);
  DiskMesh fan = initial_disk(circle, 1);
  CHECK(mesh_self_intersections(fan).empty());

  // Hand-built 5-triangle mesh with two triangles forced through each other.
  DiskMesh m;
  m.vertices = {{0, 0, 0},  {2, 0, 0},  {1, 2, 0},            // base triangle A
                {0.4, 0.9, -1}, {1.6, 0.9, -1}, {1.0, 0.4, 1},  // piercing triangle B
                {4, 0, 0},  {5, 0, 0},  {4.5, 1, 0}};
  m.triangles = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {3, 4, 6}, {4, 7, 6}};
  auto hits = mesh_self_intersections(m);
  CHECK(hits.size() == 1);
  CHECK(oracle::mesh_self_intersects_brute(m.vertices, m.triangles));
}

TEST_CASE("mesh_self_intersections invariant under triangle reindexing") {
  DiskMesh m;
  m.vertices = {{0, 0, 0}, {2, 0, 0}, {1, 2, 0}, {0.4, 0.9, -1}, {1.6, 0.9, -1}, {1.0, 0.4, 1},
                {4, 0, 0}, {5, 0, 0}, {4.5, 1, 0}};
  m.triangles = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {3, 4, 6}, {4, 7, 6}};
  auto base = mesh_self_intersections(m);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    DiskMesh p = m;
    std::shuffle(p.triangles.begin(), p.triangles.end(), rng);
    auto perm = mesh_self_intersections(p);
    REQUIRE(perm.size() == base.size());
    // Compare the segment geometry as canonical sorted sets.
    auto canon = [](const IntersectionSet& s) {
      std::vector<std::pair<Vec3, Vec3>> v = s.segments;
      for (auto& seg : v)
        if (!(seg.first < seg.second)) std::swap(seg.first, seg.second);
      std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
        if (!(a.first == b.first)) return a.first < b.first;
        return a.second < b.second;
      });
      return v;
    };
    auto cb = canon(base), cp = canon(perm);
    for (size_t i = 0; i < cb.size(); ++i) {
      CHECK(dist(cb[i].first, cp[i].first) < 1e-12);
      CHECK(dist(cb[i].second, cp[i].second) < 1e-12);
    }
  }
}

TEST_CASE("mesh_mesh_intersections: parallel disks empty, orthogonal disks cross") {
  auto c1 = make_circle(1.0, 32, {0, 0, 0}, {0, 0, 1});
  auto c2 = make_circle(1.0, 32, {0, 0, 1}, {0, 0, 1});
  DiskMesh d1 = initial_disk(c1, 1), d2 = initial_disk(c2, 1);
  CHECK(mesh_mesh_intersections(d1, d2).empty());

  auto c3 = make_circle(1.0, 32, {0, 0, 0}, {1, 0, 0});
  DiskMesh d3 = initial_disk(c3, 1);
  auto x = mesh_mesh_intersections(d1, d3);
  CHECK_FALSE(x.empty());
  // The overlap realizes (a piece of) the common diameter line x = z = 0.
  for (const auto& seg : x.segments) {
    CHECK(std::abs(seg.first.z) < 1e-9);
    CHECK(std::abs(seg.first.x) < 1e-9);
    CHECK(std::abs(seg.second.z) < 1e-9);
    CHECK(std::abs(seg.second.x) < 1e-9);
  }
}

TEST_CASE("segment_mesh_intersect: flat disk puncture") {
  auto circle = make_circle(1.0, 64);
  DiskMesh disk = initial_disk(circle, 2);
  auto above = segment_mesh_intersect({0.2, 0.1, 0.5}, {0.2, 0.1, 2.0}, disk);
  CHECK(above.empty());
  auto through = segment_mesh_intersect({0.1, 0.2, -1.0}, {0.1, 0.2, 1.0}, disk);
  REQUIRE(through.size() == 1);
  CHECK(dist(through[0].point, Vec3{0.1, 0.2, 0}) < 1e-12);
}

TEST_CASE("winding_side: sphere inside/outside and OnSurface guard") {
  auto sphere = make_sphere_mesh(1.0, 3);
  CHECK(winding_side({0, 0, 0}, sphere) == Side::Inside);
  CHECK(winding_side({10, 0, 0}, sphere) == Side::Outside);
  CHECK(winding_side({0.3, -0.2, 0.4}, sphere) == Side::Inside);
  CHECK_THROWS_AS(winding_side({1.0, 0, 0}, sphere), OnSurface);
}

TEST_CASE("winding_side agrees with 5-ray parity oracle on 100 random points") {
  auto sphere = make_sphere_mesh(1.0, 3);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> uni(-1.6, 1.6);
  int checked = 0;
  for (int i = 0; checked < 100; ++i) {
    Vec3 p{uni(rng), uni(rng), uni(rng)};
    if (std::abs(norm(p) - 1.0) < 0.05) continue;  // stay off the surface
    bool in_oracle = oracle::inside_by_ray_parity(p, sphere.vertices, sphere.triangles, 17 + i);
    CHECK((winding_side(p, sphere) == Side::Inside) == in_oracle);
    ++checked;
  }
}

TEST_CASE("orient3d exact fallback consistency on degenerate input") {
  Vec3 a{0, 0, 0}, b{1, 0, 0}, c{0, 1, 0};
  CHECK(orient3d(a, b, c, {0.25, 0.25, 0.0}) == 0);
  CHECK(orient3d(a, b, c, {0.25, 0.25, 1e-300}) != 0);
  // Near-coplanar points built to defeat plain double evaluation.
  Vec3 d{0.1 + 1e-17, 0.1, 0.0};
  int s = orient3d(a, b, c, d);
  CHECK((s == 0 || s == 1 || s == -1));
}
