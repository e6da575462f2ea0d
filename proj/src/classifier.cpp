#include "plateau/classifier.hpp"

#include "plateau/intersect.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace plateau {

namespace {

// Does segment ab meet the solid hull region within tol? The interior depth
// along the segment is convex, so its minimum locates the deepest approach.
bool segment_hits_hull_region(const ConvexHull& hull, const Vec3& a, const Vec3& b, double tol) {
  if (hull.planar) {
    const int samples = 48;
    for (int i = 0; i <= samples; ++i) {
      Vec3 p = a + (b - a) * (double(i) / samples);
      if (std::abs(hull.plane.signed_distance(p)) > tol) continue;
      if (hull_boundary_distance(p, hull) <= tol) return true;
    }
    return false;
  }
  auto depth = [&](double t) { return hull.max_facet_distance(a + (b - a) * t); };
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 60; ++it) {
    double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    if (depth(m1) < depth(m2)) hi = m2;
    else lo = m1;
  }
  double dmin = std::min({depth(0.0), depth(1.0), depth(0.5 * (lo + hi))});
  return dmin <= tol;
}

}  // namespace

std::vector<bool> check_condition1(const Decomposition& d, double tol_scale) {
  std::vector<bool> out;
  for (const auto& hook : d.hooks) out.push_back(is_extreme_curve(hook, tol_scale));
  return out;
}

std::vector<std::vector<bool>> check_condition2(const Decomposition& d, double tol_scale) {
  int n = d.n();
  std::vector<std::vector<bool>> out(n, std::vector<bool>(n, true));
  if (n <= 1) return out;
  for (int i = 0; i < n; ++i) {
    auto beta_i = d.beta_polyline(i);
    ConvexHull hull_i = build_hull_planar_ok(beta_i, tol_scale);
    double tol = hull_i.tol.surface();
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      auto beta_j = d.beta_polyline(j);
      bool clear = true;
      for (size_t s = 0; s + 1 < beta_j.size() && clear; ++s)
        if (segment_hits_hull_region(hull_i, beta_j[s], beta_j[s + 1], tol)) clear = false;
      out[i][j] = clear;
    }
  }
  return out;
}

std::vector<DiskMesh> solve_core(const Decomposition& d, const SolverConfig& config,
                                 std::vector<SolveStats>* stats) {
  std::vector<DiskMesh> cores;
  for (const auto& loop : d.gamma_hat) {
    JordanCurve boundary;
    boundary.vertices = loop;
    DiskMesh mesh = initial_disk(boundary, config.refine_levels);
    SolveStats st = minimize_area(mesh, config);
    // Maximum principle: the core must stay in the hull of the curve.
    int outside = 0;
    for (const auto& v : mesh.vertices)
      if (!d.hull.planar && d.hull.max_facet_distance(v) > d.hull.tol.surface() * 10) ++outside;
    if (outside > 0)
      st.nonconvergence = true;  // flagged; containment is part of convergence quality
    if (stats) stats->push_back(st);
    cores.push_back(std::move(mesh));
  }
  return cores;
}

namespace {

struct CoreSoup {
  std::vector<Vec3> vertices;
  std::vector<Tri> triangles;
  TriBVH bvh;

  explicit CoreSoup(const std::vector<DiskMesh>& cores) {
    for (const auto& c : cores) {
      int off = int(vertices.size());
      vertices.insert(vertices.end(), c.vertices.begin(), c.vertices.end());
      for (const auto& t : c.triangles) triangles.push_back({t[0] + off, t[1] + off, t[2] + off});
    }
    bvh = TriBVH(vertices, triangles);
  }
};

}  // namespace

std::vector<bool> check_condition3(const Decomposition& d, const std::vector<DiskMesh>& cores,
                                   std::vector<Vec3>* witnesses) {
  int n = d.n();
  std::vector<bool> out(n, true);
  if (n == 0 || cores.empty()) return out;
  CoreSoup soup(cores);
  double point_tol = d.hull.tol.point();
  double surf_tol = d.hull.tol.surface();

  for (int i = 0; i < n; ++i) {
    auto beta = d.beta_polyline(i);
    Vec3 pa = beta.front(), pb = beta.back();
    double hook_len = polyline_length(beta);
    double excuse = 0.01 * hook_len;
    bool ok = true;
    for (size_t s = 0; s + 1 < beta.size() && ok; ++s) {
      auto hits = segment_mesh_intersect(beta[s], beta[s + 1], soup.vertices, soup.triangles,
                                         &soup.bvh);
      for (const auto& h : hits) {
        if (dist(h.point, pa) <= point_tol || dist(h.point, pb) <= point_tol) continue;
        ok = false;
        if (witnesses) witnesses->push_back(h.point);
        break;
      }
      if (!ok) break;
      // Conservative grazing test away from the shared endpoints.
      const int samples = 8;
      for (int k = 0; k <= samples; ++k) {
        Vec3 p = beta[s] + (beta[s + 1] - beta[s]) * (double(k) / samples);
        if (dist(p, pa) <= excuse || dist(p, pb) <= excuse) continue;
        if (soup.bvh.distance(p) < surf_tol) {
          ok = false;
          if (witnesses) witnesses->push_back(p);
          break;
        }
      }
    }
    out[i] = ok;
  }
  return out;
}

std::vector<int> partition_sides(const Decomposition& d, const std::vector<DiskMesh>& cores) {
  int n = d.n();
  std::vector<int> side(n, 0);
  if (n == 0) return side;
  CoreSoup soup(cores);
  double L = d.hull.tol.L;

  // Sample points: interior vertices of each hook arc.
  auto samples_of = [&](int i) {
    auto beta = d.beta_polyline(i);
    std::vector<Vec3> s(beta.begin() + 1, beta.end() - 1);
    return s;
  };

  // Transversal crossing parity between two interior points; -1 on ties.
  auto parity = [&](const Vec3& from, const Vec3& to) -> int {
    const Vec3 jitters[4] = {{0, 0, 0},
                             {1e-4 * L, 0.43e-4 * L, -0.21e-4 * L},
                             {-0.37e-4 * L, 1e-4 * L, 0.53e-4 * L},
                             {0.29e-4 * L, -0.61e-4 * L, 1e-4 * L}};
    for (const auto& j : jitters) {
      Vec3 target = to + j;
      long ties = 0;
      int count = 0;
      for (int t : soup.bvh.segment_candidates(from, target)) {
        const Tri& tr = soup.triangles[t];
        auto h = segment_triangle_intersect(from, target, soup.vertices[tr[0]],
                                            soup.vertices[tr[1]], soup.vertices[tr[2]], &ties);
        if (h) ++count;
      }
      if (ties == 0) return count % 2;
    }
    return -1;
  };

  auto ref_samples = samples_of(0);
  if (ref_samples.empty()) throw SideAmbiguous("partition_sides: hook 0 has no interior vertex");
  // Reference point: the deepest interior vertex of hook 0 (farthest from the
  // hull boundary), which sits most robustly inside its component.
  Vec3 ref = ref_samples[ref_samples.size() / 2];
  double best_depth = -1.0;
  for (const auto& s : ref_samples) {
    double depth = hull_boundary_distance(s, d.hull);
    if (depth > best_depth) {
      best_depth = depth;
      ref = s;
    }
  }

  side[0] = +1;  // convention: the first hook's component is Omega+
  for (int i = 0; i < n; ++i) {
    auto pts = samples_of(i);
    int agreed = -2;
    for (const auto& p : pts) {
      if (dist(p, ref) <= d.hull.tol.point()) continue;
      int par = parity(p, ref);
      if (par < 0) continue;  // tie even after jitter: skip this sample
      int s = par == 0 ? +1 : -1;
      if (agreed == -2) agreed = s;
      else if (agreed != s)
        throw SideAmbiguous("partition_sides: hook " + std::to_string(i) +
                            " samples disagree on the side of the core");
    }
    if (agreed == -2)
      throw SideAmbiguous("partition_sides: hook " + std::to_string(i) +
                          " produced no tie-free parity sample");
    side[i] = agreed;
  }
  return side;
}

Classification classify(const JordanCurve& curve, const SolverConfig& config, RouteMode mode) {
  Classification out;
  auto& rep = out.report;

  auto vrep = validate_curve(curve, config.tol_scale);
  if (!vrep.valid) {
    std::ostringstream oss;
    oss << "invalid curve:";
    for (const auto& f : vrep.failures) oss << " " << f;
    throw InvalidInput(oss.str());
  }

  rep.total_curvature_value = total_curvature(curve);
  rep.eww_flag = rep.total_curvature_value < 4 * std::numbers::pi;

  ConvexHull hull = build_hull_planar_ok(curve.vertices, config.tol_scale);
  Decomposition d = extract_gamma_star(curve, hull);
  d = merge_fragments(d, 2);
  d = route_arcs(d, mode);
  d = build_hooks_and_gamma_hat(d);

  rep.n_hooks = d.n();
  rep.is_tame = true;  // finitely many components by discreteness
  rep.is_extreme = d.n() == 0;

  rep.condition1 = check_condition1(d, config.tol_scale);
  rep.condition2 = check_condition2(d, config.tol_scale);
  for (int i = 0; i < d.n(); ++i) {
    if (!rep.condition1[i])
      rep.diagnostics.push_back("condition1: hook " + std::to_string(i) + " not extreme");
    for (int j = 0; j < d.n(); ++j)
      if (i != j && !rep.condition2[i][j])
        rep.diagnostics.push_back("condition2: CH(beta_" + std::to_string(i) + ") meets beta_" +
                                  std::to_string(j));
  }

  // Linking numbers between hook pairs, attached as a diagnostic only.
  rep.linking_diagnostic.assign(d.n(), std::vector<int>(d.n(), 0));
  for (int i = 0; i < d.n(); ++i)
    for (int j = i + 1; j < d.n(); ++j) {
      try {
        int lk = linking_number(d.hooks[i], d.hooks[j], config.tol_scale);
        rep.linking_diagnostic[i][j] = rep.linking_diagnostic[j][i] = lk;
      } catch (const Error&) {
        rep.linking_diagnostic[i][j] = rep.linking_diagnostic[j][i] = 0;
      }
    }

  out.cores = solve_core(d, config, &out.core_stats);
  rep.condition3 = check_condition3(d, out.cores, &rep.witnesses);
  for (int i = 0; i < d.n(); ++i)
    if (!rep.condition3[i])
      rep.diagnostics.push_back("condition3: hook " + std::to_string(i) + " meets the core");

  bool all1 = std::all_of(rep.condition1.begin(), rep.condition1.end(), [](bool b) { return b; });
  bool all2 = true;
  for (const auto& row : rep.condition2)
    for (bool b : row) all2 = all2 && b;
  bool all3 = std::all_of(rep.condition3.begin(), rep.condition3.end(), [](bool b) { return b; });
  rep.is_weak_extreme = all1 && all2 && all3;

  if (rep.is_weak_extreme && d.n() > 0 && all3) {
    try {
      rep.side = partition_sides(d, out.cores);
      d.side = rep.side;
    } catch (const SideAmbiguous& e) {
      rep.diagnostics.push_back(e.what());
      rep.is_weak_extreme = false;
    }
  }

  out.decomposition = std::move(d);
  return out;
}

}  // namespace plateau
