#include "plateau/decompose.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace plateau {

std::vector<Vec3> Decomposition::beta_polyline(int i) const {
  std::vector<Vec3> out;
  for (int idx : beta[i]) out.push_back(curve.vertices[idx]);
  return out;
}

namespace {

// Rebuild alpha/beta runs from the on-hull flags.
void rebuild_runs(Decomposition& d) {
  d.alpha.clear();
  d.beta.clear();
  int n = d.curve.size();
  const auto& on = d.vertex_on_hull;

  int on_count = int(std::count(on.begin(), on.end(), true));
  if (on_count == 0) throw AllInterior("extract_gamma_star: no vertex on the hull");
  if (on_count == n) {
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    d.alpha.push_back(all);
    return;
  }

  // Start at the beginning of an on-hull run.
  int start = -1;
  for (int i = 0; i < n; ++i) {
    if (on[i] && !on[(i - 1 + n) % n]) {
      start = i;
      break;
    }
  }

  int i = start;
  int guard = 0;
  do {
    std::vector<int> alpha_run;
    while (on[i % n] && guard <= 2 * n) {
      alpha_run.push_back(i % n);
      ++i;
      ++guard;
    }
    std::vector<int> beta_run;
    beta_run.push_back((i - 1 + n) % n);  // p_{2k}: last contact vertex
    while (!on[i % n] && guard <= 2 * n) {
      beta_run.push_back(i % n);
      ++i;
      ++guard;
    }
    beta_run.push_back(i % n);  // p_{2k+1}: next contact vertex
    d.alpha.push_back(alpha_run);
    d.beta.push_back(beta_run);
  } while (i % n != start && guard <= 2 * n);
}

// True when two polylines approach each other beyond a crossing tolerance.
// Arcs living on the hull surface can cross while keeping a 3-D gap up to the
// chordal sagitta, so the tolerance grows with the local segment length.
// Approaches within `endpoint_tol` of a shared endpoint are legitimate.
bool polylines_conflict(const std::vector<Vec3>& a, const std::vector<Vec3>& b, double base_tol,
                        const std::vector<Vec3>& excluded, double endpoint_tol) {
  for (size_t i = 0; i + 1 < a.size(); ++i) {
    double la = dist(a[i], a[i + 1]);
    for (size_t j = 0; j + 1 < b.size(); ++j) {
      double lb = dist(b[j], b[j + 1]);
      double tol = std::max(base_tol, 1e-3 * std::min(la, lb));
      double dmin = segment_segment_distance(a[i], a[i + 1], b[j], b[j + 1]);
      if (dmin > tol) continue;
      bool excused = false;
      for (const auto& e : excluded) {
        double da = std::min({dist(a[i], e), dist(a[i + 1], e)});
        double db = std::min({dist(b[j], e), dist(b[j + 1], e)});
        if (da <= endpoint_tol && db <= endpoint_tol) {
          excused = true;
          break;
        }
      }
      if (!excused) return true;
    }
  }
  return false;
}

std::vector<Vec3> drop_consecutive_duplicates(const std::vector<Vec3>& in, double tol) {
  std::vector<Vec3> out;
  for (const auto& p : in)
    if (out.empty() || dist(out.back(), p) > tol) out.push_back(p);
  if (out.size() > 1 && dist(out.front(), out.back()) <= tol) out.pop_back();
  return out;
}

}  // namespace

bool polyline_loop_simple(const std::vector<Vec3>& loop, double tol) {
  int n = int(loop.size());
  if (n < 3) return false;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      int gap = std::min(j - i, n - (j - i));
      if (gap <= 1) continue;
      double d = segment_segment_distance(loop[i], loop[(i + 1) % n], loop[j], loop[(j + 1) % n]);
      if (d <= tol) return false;
    }
  }
  return true;
}

Decomposition extract_gamma_star(const JordanCurve& curve, const ConvexHull& hull) {
  Decomposition d;
  d.curve = curve;
  d.hull = hull;
  d.vertex_on_hull.resize(curve.size());
  for (int i = 0; i < curve.size(); ++i) d.vertex_on_hull[i] = on_hull(curve.vertices[i], hull);
  rebuild_runs(d);
  return d;
}

Decomposition merge_fragments(const Decomposition& din, int min_run) {
  Decomposition d = din;
  if (d.n() == 0) return d;

  // Flip short contact runs to off-hull, keeping the longest run alive.
  std::vector<std::vector<int>> runs = d.alpha;
  size_t longest = 0;
  for (size_t k = 1; k < runs.size(); ++k)
    if (runs[k].size() > runs[longest].size()) longest = k;
  bool changed = false;
  for (size_t k = 0; k < runs.size(); ++k) {
    if (k == longest) continue;
    if (int(runs[k].size()) < min_run) {
      for (int idx : runs[k]) d.vertex_on_hull[idx] = false;
      changed = true;
    }
  }
  if (changed) {
    rebuild_runs(d);
    d.routed.clear();
    d.gamma_hat.clear();
    d.hooks.clear();
  }
  return d;
}

namespace {

std::vector<std::vector<Vec3>> split_loop_at_crossings(std::vector<Vec3> loop, double tol,
                                                       int* crossings, int depth = 0) {
  int n = int(loop.size());
  if (depth > 8 || n < 4) return {loop};
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      int gap = std::min(j - i, n - (j - i));
      if (gap <= 1) continue;
      const Vec3 &a0 = loop[i], &a1 = loop[(i + 1) % n];
      const Vec3 &b0 = loop[j], &b1 = loop[(j + 1) % n];
      if (segment_segment_distance(a0, a1, b0, b1) > tol) continue;
      // Crossing point: midpoint of the closest approach, inserted into both
      // segments so the split loops share it exactly.
      Vec3 pa = closest_point_segment((b0 + b1) * 0.5, a0, a1);
      Vec3 pb = closest_point_segment(pa, b0, b1);
      pa = closest_point_segment(pb, a0, a1);
      Vec3 x = (pa + pb) * 0.5;
      ++(*crossings);
      std::vector<Vec3> loop1, loop2;
      loop1.push_back(x);
      for (int k = i + 1; k <= j; ++k) loop1.push_back(loop[k]);
      loop2.push_back(x);
      for (int k = j + 1; k <= i + n; ++k) loop2.push_back(loop[k % n]);
      auto out1 = split_loop_at_crossings(drop_consecutive_duplicates(loop1, tol * 0.01), tol,
                                          crossings, depth + 1);
      auto out2 = split_loop_at_crossings(drop_consecutive_duplicates(loop2, tol * 0.01), tol,
                                          crossings, depth + 1);
      out1.insert(out1.end(), out2.begin(), out2.end());
      return out1;
    }
  }
  return {loop};
}

std::vector<Vec3> gamma_star_polyline(const Decomposition& d, int alpha_index) {
  std::vector<Vec3> out;
  for (int idx : d.alpha[alpha_index]) out.push_back(d.curve.vertices[idx]);
  return out;
}

}  // namespace

Decomposition route_arcs(const Decomposition& din, RouteMode mode, const GeodesicOptions& geo) {
  Decomposition d = din;
  d.routed.clear();
  d.gamma_hat.clear();
  d.multi_loop = false;
  d.crossings = 0;
  double tol = d.hull.tol.surface();
  double endpoint_tol = 16.0 * tol;

  if (d.n() == 0) {
    d.gamma_hat.push_back(d.curve.vertices);
    return d;
  }

  // Clearance obstacles: all contact arcs, plus earlier routed arcs.
  std::vector<std::vector<Vec3>> obstacles;
  for (size_t a = 0; a < d.alpha.size(); ++a) obstacles.push_back(gamma_star_polyline(d, int(a)));

  bool any_conflict = false;
  for (int i = 0; i < d.n(); ++i) {
    Vec3 A = d.hook_start(i), B = d.hook_end(i);
    if (!on_hull(A, d.hull) || !on_hull(B, d.hull))
      throw RoutingFailed("route_arcs: hook endpoint off the hull");

    std::vector<Vec3> endpoints = {A, B};
    auto conflicts = [&](const std::vector<Vec3>& cand) {
      // The contact arcs contain A and B themselves, and earlier arcs may
      // share a p_k: approaches near the arc's own endpoints are excused.
      for (const auto& obs : obstacles)
        if (polylines_conflict(cand, obs, tol, endpoints, endpoint_tol)) return true;
      return false;
    };

    RoutedArc arc;
    bool placed = false;
    if (mode == RouteMode::StraightPreferred && segment_on_hull(A, B, d.hull)) {
      arc.polyline = {A, B};
      arc.is_chord = true;
      if (!conflicts(arc.polyline)) placed = true;
    }
    if (!placed) {
      GeodesicOptions opts = geo;
      auto path = surface_shortest_path(d.hull, A, B, opts);
      arc.is_chord = false;
      if (!path.empty() && !conflicts(path)) {
        arc.polyline = path;
        placed = true;
      } else if (mode == RouteMode::ShortestPath) {
        // Canonical choice: keep the true shortest path and let gamma-hat
        // split into loops when it crosses.
        arc.polyline = path.empty() ? std::vector<Vec3>{A, B} : path;
        any_conflict = true;
      } else {
        // Deterministic retries: block graph nodes near the offending
        // geometry at growing radius.
        for (int attempt = 1; attempt <= 8 && !placed; ++attempt) {
          double radius = attempt * 4.0 * tol * 100.0;
          GeodesicOptions blocked = geo;
          auto obstacles_copy = obstacles;
          Vec3 Acopy = A, Bcopy = B;
          blocked.blocked = [obstacles_copy, radius, Acopy, Bcopy,
                             endpoint_tol](const Vec3& x) {
            if (dist(x, Acopy) <= endpoint_tol || dist(x, Bcopy) <= endpoint_tol) return false;
            for (const auto& obs : obstacles_copy)
              for (size_t k = 0; k + 1 < obs.size(); ++k)
                if (dist(x, closest_point_segment(x, obs[k], obs[k + 1])) <= radius) return true;
            return false;
          };
          auto retry = surface_shortest_path(d.hull, A, B, blocked);
          if (!retry.empty() && !conflicts(retry)) {
            arc.polyline = retry;
            arc.retries = attempt;
            placed = true;
          }
        }
        if (!placed) {
          arc.polyline = path.empty() ? std::vector<Vec3>{A, B} : path;
          any_conflict = true;
        }
      }
    }
    d.routed.push_back(arc);
    obstacles.push_back(d.routed.back().polyline);
  }

  // Assemble gamma-hat: alpha_1 l_1 alpha_2 l_2 ...
  std::vector<Vec3> loop;
  for (int i = 0; i < d.n(); ++i) {
    auto alpha_pts = gamma_star_polyline(d, i);
    loop.insert(loop.end(), alpha_pts.begin(), alpha_pts.end());
    const auto& l = d.routed[i].polyline;
    for (size_t k = 1; k + 1 < l.size(); ++k) loop.push_back(l[k]);
  }
  loop = drop_consecutive_duplicates(loop, d.hull.tol.point());

  if (!any_conflict && polyline_loop_simple(loop, tol)) {
    d.gamma_hat.push_back(loop);
  } else {
    d.multi_loop = true;
    d.gamma_hat = split_loop_at_crossings(loop, tol, &d.crossings);
  }
  return d;
}

Decomposition build_hooks_and_gamma_hat(const Decomposition& din) {
  Decomposition d = din;
  if (d.routed.empty() && d.n() > 0)
    throw RoutingFailed("build_hooks_and_gamma_hat: route_arcs required first");
  d.hooks.clear();
  double tol = d.hull.tol.point();

  for (int i = 0; i < d.n(); ++i) {
    std::vector<Vec3> loop = d.beta_polyline(i);
    const auto& l = d.routed[i].polyline;
    for (int k = int(l.size()) - 2; k >= 1; --k) loop.push_back(l[k]);
    loop = drop_consecutive_duplicates(loop, tol);
    if (!polyline_loop_simple(loop, tol))
      throw HookNotSimple("hook " + std::to_string(i) + " self-intersects");
    JordanCurve hook;
    hook.vertices = loop;
    d.hooks.push_back(hook);
  }

  // Reconstruction identity: closure of the symmetric difference of
  // gamma-hat with the hooks recovers the curve's vertex set.
  std::set<Vec3> ghat, hooks_all, curve_set;
  for (const auto& loop : d.gamma_hat)
    for (const auto& p : loop) ghat.insert(p);
  for (const auto& h : d.hooks)
    for (const auto& p : h.vertices) hooks_all.insert(p);
  for (const auto& p : d.curve.vertices) curve_set.insert(p);
  std::set<Vec3> symdiff;
  for (const auto& p : ghat)
    if (!hooks_all.count(p)) symdiff.insert(p);
  for (const auto& p : hooks_all)
    if (!ghat.count(p)) symdiff.insert(p);
  for (int i = 0; i < d.n(); ++i) {
    symdiff.insert(d.hook_start(i));
    symdiff.insert(d.hook_end(i));
  }
  // Crossing points inserted by the multi-loop split are not curve vertices.
  if (!d.multi_loop) {
    for (const auto& p : curve_set)
      if (!symdiff.count(p))
        throw Error("decomposition reconstruction identity failed (missing curve vertex)");
    for (const auto& p : symdiff)
      if (!curve_set.count(p))
        throw Error("decomposition reconstruction identity failed (extra vertex)");
  }
  return d;
}

Decomposition build_signed_curves(const Decomposition& din, const std::vector<int>& side) {
  Decomposition d = din;
  d.side = side;
  d.gamma_hat_plus.clear();
  d.gamma_hat_minus.clear();
  if (d.n() == 0) {
    d.gamma_hat_plus = d.curve.vertices;
    d.gamma_hat_minus = d.curve.vertices;
    return d;
  }
  if (d.multi_loop)
    throw Error("build_signed_curves: single-loop decomposition required");

  auto assemble = [&](int keep_side) {
    std::vector<Vec3> loop;
    for (int i = 0; i < d.n(); ++i) {
      for (int idx : d.alpha[i]) loop.push_back(d.curve.vertices[idx]);
      if (side[i] == keep_side) {
        auto bp = d.beta_polyline(i);
        for (size_t k = 1; k + 1 < bp.size(); ++k) loop.push_back(bp[k]);
      } else {
        const auto& l = d.routed[i].polyline;
        for (size_t k = 1; k + 1 < l.size(); ++k) loop.push_back(l[k]);
      }
    }
    return drop_consecutive_duplicates(loop, d.hull.tol.point());
  };
  d.gamma_hat_plus = assemble(+1);
  d.gamma_hat_minus = assemble(-1);
  return d;
}

}  // namespace plateau
