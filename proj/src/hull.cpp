#include "plateau/hull.hpp"

#include "plateau/predicates.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace plateau {

namespace {

// Outward ccw facet convention: for outward-ordered (a,b,c) and x strictly
// outside the plane, orient3d(a,b,c,x) < 0.
bool facet_sees(const std::vector<Vec3>& pts, const Tri& f, const Vec3& p) {
  return orient3d(pts[f[0]], pts[f[1]], pts[f[2]], p) < 0;
}

struct Facet {
  Tri tri;
  bool alive = true;
  std::vector<int> conflicts;
};

ConvexHull build_planar(const std::vector<Vec3>& input, const std::vector<Vec3>& pts,
                        const Tolerances& tol, const Plane& pl) {
  // 2-D hull in the best-fit plane (Andrew monotone chain), doubled sheets.
  Vec3 axis_u, axis_v;
  {
    Vec3 n = pl.normal;
    Vec3 seed = std::abs(n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    axis_u = normalized(cross(n, seed));
    axis_v = cross(n, axis_u);
  }
  struct P2 {
    double u, v;
    int idx;
  };
  std::vector<P2> proj(pts.size());
  for (int i = 0; i < int(pts.size()); ++i) {
    Vec3 d = pts[i] - pl.origin;
    proj[i] = {dot(d, axis_u), dot(d, axis_v), i};
  }
  std::sort(proj.begin(), proj.end(), [](const P2& a, const P2& b) {
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
  });
  proj.erase(std::unique(proj.begin(), proj.end(),
                         [](const P2& a, const P2& b) { return a.u == b.u && a.v == b.v; }),
             proj.end());
  if (int(proj.size()) < 3) throw DegenerateHull("planar hull: fewer than 3 distinct points");

  auto cross2 = [](const P2& o, const P2& a, const P2& b) {
    return orient2d(o.u, o.v, a.u, a.v, b.u, b.v);
  };
  std::vector<P2> chain(2 * proj.size());
  int k = 0;
  for (const auto& p : proj) {
    while (k >= 2 && cross2(chain[k - 2], chain[k - 1], p) <= 0) --k;
    chain[k++] = p;
  }
  int lower = k + 1;
  for (int i = int(proj.size()) - 2; i >= 0; --i) {
    const auto& p = proj[i];
    while (k >= lower && cross2(chain[k - 2], chain[k - 1], p) <= 0) --k;
    chain[k++] = p;
  }
  chain.resize(k - 1);
  if (int(chain.size()) < 3) throw DegenerateHull("planar hull: points are collinear");

  ConvexHull hull;
  hull.input_points = input;
  hull.tol = tol;
  hull.planar = true;
  hull.plane = pl;
  for (const auto& p : chain) {
    hull.planar_polygon.push_back(int(hull.vertices.size()));
    hull.vertices.push_back(pts[p.idx]);
    hull.vertex_source.push_back(p.idx);
  }
  // Two coincident fan sheets with opposite normals.
  int n = int(hull.planar_polygon.size());
  for (int i = 1; i + 1 < n; ++i) {
    hull.facets.push_back({0, i, i + 1});
    hull.facet_normals.push_back(pl.normal);
    hull.facet_offsets.push_back(dot(pl.normal, hull.vertices[0]));
  }
  for (int i = 1; i + 1 < n; ++i) {
    hull.facets.push_back({0, i + 1, i});
    hull.facet_normals.push_back(-pl.normal);
    hull.facet_offsets.push_back(dot(-pl.normal, hull.vertices[0]));
  }
  hull.interior_point = pl.origin;
  return hull;
}

ConvexHull build_hull_impl(const std::vector<Vec3>& input, double tol_scale, bool planar_ok) {
  if (input.size() < 4 && !planar_ok)
    throw DegenerateHull("build_hull: need at least 4 points");
  if (input.size() < 3) throw DegenerateHull("build_hull: need at least 3 points");
  Tolerances tol = Tolerances::for_points(input, tol_scale);

  // Deterministic processing order: lexicographically sorted unique points.
  std::vector<Vec3> pts = input;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) throw DegenerateHull("build_hull: fewer than 3 distinct points");

  Plane pl;
  bool coplanar = coplanar_within(pts, tol.point(), &pl);
  if (coplanar || pts.size() == 3) {
    if (!planar_ok) throw DegenerateHull("build_hull: input coplanar within tolerance");
    return build_planar(input, pts, tol, pl);
  }

  // Initial simplex: extremes along lex order, then max area, then max
  // volume with an exact nonzero orientation.
  int i0 = 0, i1 = -1;
  double best = -1.0;
  for (int i = 1; i < int(pts.size()); ++i) {
    double d = dist2(pts[i0], pts[i]);
    if (d > best) {
      best = d;
      i1 = i;
    }
  }
  int i2 = -1;
  best = -1.0;
  for (int i = 0; i < int(pts.size()); ++i) {
    if (i == i0 || i == i1) continue;
    double a = norm2(cross(pts[i1] - pts[i0], pts[i] - pts[i0]));
    if (a > best) {
      best = a;
      i2 = i;
    }
  }
  if (i2 < 0 || best == 0.0) {
    if (!planar_ok) throw DegenerateHull("build_hull: input degenerate");
    throw DegenerateHull("build_hull: points are collinear");
  }
  int i3 = -1;
  best = 0.0;
  for (int i = 0; i < int(pts.size()); ++i) {
    if (i == i0 || i == i1 || i == i2) continue;
    if (orient3d(pts[i0], pts[i1], pts[i2], pts[i]) == 0) continue;
    double v = std::abs(triple(pts[i0], pts[i1], pts[i2], pts[i]));
    if (v > best) {
      best = v;
      i3 = i;
    }
  }
  if (i3 < 0) {
    // Exactly coplanar beyond fp tolerance.
    if (!planar_ok) throw DegenerateHull("build_hull: input coplanar within tolerance");
    return build_planar(input, pts, tol, pl);
  }

  Vec3 inner = (pts[i0] + pts[i1] + pts[i2] + pts[i3]) / 4.0;
  std::vector<Facet> facets;
  auto add_facet = [&](int a, int b, int c) {
    Tri t{a, b, c};
    // Outward: the interior point must not "see" the facet.
    if (orient3d(pts[a], pts[b], pts[c], inner) < 0) std::swap(t[1], t[2]);
    facets.push_back({t, true, {}});
  };
  add_facet(i0, i1, i2);
  add_facet(i0, i1, i3);
  add_facet(i0, i2, i3);
  add_facet(i1, i2, i3);

  // Conflict lists.
  std::vector<int> used(pts.size(), 0);
  used[i0] = used[i1] = used[i2] = used[i3] = 1;
  for (int i = 0; i < int(pts.size()); ++i) {
    if (used[i]) continue;
    for (auto& f : facets) {
      if (facet_sees(pts, f.tri, pts[i])) {
        f.conflicts.push_back(i);
        break;
      }
    }
  }

  // Incremental insertion.
  while (true) {
    int fi = -1;
    for (int f = 0; f < int(facets.size()); ++f)
      if (facets[f].alive && !facets[f].conflicts.empty()) {
        fi = f;
        break;
      }
    if (fi < 0) break;

    // Farthest conflict point of that facet (deterministic tie-break).
    const Tri& ft = facets[fi].tri;
    Vec3 n = cross(pts[ft[1]] - pts[ft[0]], pts[ft[2]] - pts[ft[0]]);
    int pi = -1;
    double dbest = -1.0;
    for (int c : facets[fi].conflicts) {
      double d = std::abs(dot(pts[c] - pts[ft[0]], n));
      if (d > dbest || (d == dbest && c < pi)) {
        dbest = d;
        pi = c;
      }
    }
    const Vec3& p = pts[pi];
    used[pi] = 1;

    // Visible set (exact) and horizon.
    std::vector<int> visible;
    for (int f = 0; f < int(facets.size()); ++f)
      if (facets[f].alive && facet_sees(pts, facets[f].tri, p)) visible.push_back(f);

    std::map<std::pair<int, int>, int> edge_count;  // directed edges of visible facets
    for (int f : visible) {
      const Tri& t = facets[f].tri;
      for (int e = 0; e < 3; ++e) edge_count[{t[e], t[(e + 1) % 3]}] = f;
    }
    std::vector<std::pair<int, int>> horizon;
    for (const auto& [e, f] : edge_count) {
      if (!edge_count.count({e.second, e.first})) horizon.push_back(e);
    }

    // Gather orphaned conflict points.
    std::vector<int> orphans;
    for (int f : visible) {
      for (int c : facets[f].conflicts)
        if (!used[c]) orphans.push_back(c);
      facets[f].alive = false;
      facets[f].conflicts.clear();
    }

    for (const auto& e : horizon) {
      Tri t{e.first, e.second, pi};
      if (orient3d(pts[t[0]], pts[t[1]], pts[t[2]], inner) < 0) std::swap(t[1], t[2]);
      facets.push_back({t, true, {}});
    }
    for (int c : orphans) {
      for (int f = int(facets.size()) - int(horizon.size()); f < int(facets.size()); ++f) {
        if (facet_sees(pts, facets[f].tri, pts[c])) {
          facets[f].conflicts.push_back(c);
          break;
        }
      }
      // Points seen by no new facet are inside the updated hull: dropped.
    }
  }

  // Compact result.
  ConvexHull hull;
  hull.input_points = input;
  hull.tol = tol;
  hull.interior_point = inner;
  std::map<int, int> remap;
  for (const auto& f : facets) {
    if (!f.alive) continue;
    Tri t;
    for (int k = 0; k < 3; ++k) {
      auto it = remap.find(f.tri[k]);
      if (it == remap.end()) {
        int idx = int(hull.vertices.size());
        remap.emplace(f.tri[k], idx);
        hull.vertices.push_back(pts[f.tri[k]]);
        hull.vertex_source.push_back(f.tri[k]);
        t[k] = idx;
      } else {
        t[k] = it->second;
      }
    }
    hull.facets.push_back(t);
    Vec3 nrm = triangle_normal(hull.vertices[t[0]], hull.vertices[t[1]], hull.vertices[t[2]]);
    hull.facet_normals.push_back(nrm);
    hull.facet_offsets.push_back(dot(nrm, hull.vertices[t[0]]));
  }
  return hull;
}

}  // namespace

ConvexHull build_hull(const std::vector<Vec3>& points, double tol_scale) {
  return build_hull_impl(points, tol_scale, false);
}

ConvexHull build_hull_planar_ok(const std::vector<Vec3>& points, double tol_scale) {
  return build_hull_impl(points, tol_scale, true);
}

double ConvexHull::max_facet_distance(const Vec3& p) const {
  double m = std::numeric_limits<double>::lowest();
  for (int f = 0; f < facet_count(); ++f)
    m = std::max(m, dot(facet_normals[f], p) - facet_offsets[f]);
  return m;
}

ClosedSurface ConvexHull::as_surface() const {
  ClosedSurface s;
  s.vertices = vertices;
  s.triangles = facets;
  return s;
}

namespace {

// Planar mode: signed distance to the hull polygon region in-plane
// (negative inside the polygon).
double planar_region_distance(const Vec3& p, const ConvexHull& hull) {
  Vec3 n = hull.plane.normal;
  Vec3 seed = std::abs(n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  Vec3 u = normalized(cross(n, seed));
  Vec3 v = cross(n, u);
  auto to2d = [&](const Vec3& q) {
    Vec3 d = q - hull.plane.origin;
    return std::pair<double, double>(dot(d, u), dot(d, v));
  };
  auto [px, py] = to2d(p);
  int m = int(hull.planar_polygon.size());
  double max_side = std::numeric_limits<double>::lowest();
  for (int i = 0; i < m; ++i) {
    auto [ax, ay] = to2d(hull.vertices[hull.planar_polygon[i]]);
    auto [bx, by] = to2d(hull.vertices[hull.planar_polygon[(i + 1) % m]]);
    double ex = bx - ax, ey = by - ay;
    double len = std::hypot(ex, ey);
    if (len <= 0) continue;
    // ccw polygon: outward normal of edge is (ey, -ex)/len
    double side = ((px - ax) * ey - (py - ay) * ex) / len;
    max_side = std::max(max_side, side);
  }
  return max_side;
}

}  // namespace

bool on_hull(const Vec3& p, const ConvexHull& hull) {
  double t = hull.tol.surface();
  if (hull.planar) {
    if (std::abs(hull.plane.signed_distance(p)) > t) return false;
    return planar_region_distance(p, hull) <= t;
  }
  double m = hull.max_facet_distance(p);
  return m <= t && m >= -t;
}

double hull_boundary_distance(const Vec3& p, const ConvexHull& hull) {
  if (hull.planar) {
    double dpl = std::abs(hull.plane.signed_distance(p));
    double din = planar_region_distance(p, hull);
    if (din <= 0) return dpl;
    return std::hypot(dpl, din);
  }
  double m = hull.max_facet_distance(p);
  if (m <= 0) return -m;  // interior: min distance to boundary = -max signed dist
  // Outside: distance to the closest facet triangle.
  double best = std::numeric_limits<double>::max();
  for (const auto& f : hull.facets) {
    Vec3 c =
        closest_point_triangle(p, hull.vertices[f[0]], hull.vertices[f[1]], hull.vertices[f[2]]);
    best = std::min(best, dist(p, c));
  }
  return best;
}

bool is_extreme_curve(const JordanCurve& curve, double tol_scale) {
  ConvexHull hull = build_hull_planar_ok(curve.vertices, tol_scale);
  for (const auto& v : curve.vertices)
    if (!on_hull(v, hull)) return false;
  return true;
}

bool segment_on_hull(const Vec3& p, const Vec3& q, const ConvexHull& hull) {
  double t = hull.tol.surface();
  auto ok = [&](const Vec3& x) { return on_hull(x, hull); };
  const int samples = 32;
  for (int i = 0; i <= samples; ++i) {
    double s = double(i) / samples;
    if (!ok(p + (q - p) * s)) return false;
  }
  if (!hull.planar) {
    // The interior depth max_facet_distance is convex along the segment;
    // minimize it by ternary search and test the deepest point.
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 80; ++it) {
      double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
      double f1 = hull.max_facet_distance(p + (q - p) * m1);
      double f2 = hull.max_facet_distance(p + (q - p) * m2);
      if (f1 < f2) hi = m2;
      else lo = m1;
    }
    Vec3 deepest = p + (q - p) * (0.5 * (lo + hi));
    if (hull.max_facet_distance(deepest) < -t) return false;
  }
  return true;
}

double polyline_length(const std::vector<Vec3>& pts) {
  double s = 0.0;
  for (size_t i = 0; i + 1 < pts.size(); ++i) s += dist(pts[i], pts[i + 1]);
  return s;
}

namespace {

struct GeoGraph {
  std::vector<Vec3> nodes;
  std::vector<int> node_edge;  // hull edge id the node lies on, -1 for vertices/endpoints
  std::vector<std::vector<std::pair<int, double>>> adj;
};

}  // namespace

std::vector<Vec3> surface_shortest_path(const ConvexHull& hull, const Vec3& p, const Vec3& q,
                                        const GeodesicOptions& opts) {
  double t_on = hull.tol.surface();
  // Accept points near the boundary; geodesics on a planar hull are segments.
  if (hull.planar) {
    if (!on_hull(p, hull) || !on_hull(q, hull)) throw PointNotOnHull("surface_shortest_path");
    return {p, q};
  }
  auto facet_distance = [&](int f, const Vec3& x) {
    const Tri& tr = hull.facets[f];
    return dist(x, closest_point_triangle(x, hull.vertices[tr[0]], hull.vertices[tr[1]],
                                          hull.vertices[tr[2]]));
  };
  {
    double dp = hull_boundary_distance(p, hull), dq = hull_boundary_distance(q, hull);
    if (dp > t_on * 10 || dq > t_on * 10)
      throw PointNotOnHull("surface_shortest_path: endpoint off the hull boundary");
  }

  // Hull edge list with adjacent facets.
  auto edge_map = build_edge_map(hull.facets);
  std::vector<std::pair<int, int>> edges;
  std::vector<std::array<int, 2>> edge_facets;
  std::map<std::pair<int, int>, int> edge_id;
  for (const auto& [e, fl] : edge_map) {
    if (fl.size() != 2) continue;
    edge_id[e] = int(edges.size());
    edges.push_back(e);
    edge_facets.push_back({fl[0], fl[1]});
  }

  GeoGraph g;
  auto add_node = [&](const Vec3& x, int on_edge) {
    g.nodes.push_back(x);
    g.node_edge.push_back(on_edge);
    return int(g.nodes.size()) - 1;
  };
  // Hull vertices first.
  std::vector<int> vertex_node(hull.vertices.size());
  for (int v = 0; v < int(hull.vertices.size()); ++v) vertex_node[v] = add_node(hull.vertices[v], -1);
  // Steiner nodes per edge.
  std::vector<std::vector<int>> edge_nodes(edges.size());
  int k = std::max(0, opts.steiner_per_edge);
  for (int e = 0; e < int(edges.size()); ++e) {
    const Vec3& a = hull.vertices[edges[e].first];
    const Vec3& b = hull.vertices[edges[e].second];
    for (int i = 1; i <= k; ++i) {
      double s = double(i) / (k + 1);
      edge_nodes[e].push_back(add_node(a + (b - a) * s, e));
    }
  }
  // Facet membership.
  std::vector<std::vector<int>> facet_nodes(hull.facet_count());
  for (int f = 0; f < hull.facet_count(); ++f) {
    const Tri& tr = hull.facets[f];
    for (int kk = 0; kk < 3; ++kk) {
      facet_nodes[f].push_back(vertex_node[tr[kk]]);
      int a = tr[kk], b = tr[(kk + 1) % 3];
      auto key = std::minmax(a, b);
      auto it = edge_id.find({key.first, key.second});
      if (it != edge_id.end())
        for (int n : edge_nodes[it->second]) facet_nodes[f].push_back(n);
    }
  }
  // Endpoints: reuse a coincident node or attach to the closest facets.
  auto place_endpoint = [&](const Vec3& x) {
    for (int v = 0; v < int(hull.vertices.size()); ++v)
      if (dist(hull.vertices[v], x) <= hull.tol.point()) return vertex_node[v];
    int node = add_node(x, -1);
    double best = std::numeric_limits<double>::max();
    for (int f = 0; f < hull.facet_count(); ++f) best = std::min(best, facet_distance(f, x));
    for (int f = 0; f < hull.facet_count(); ++f)
      if (facet_distance(f, x) <= best + t_on) facet_nodes[f].push_back(node);
    return node;
  };
  int src = place_endpoint(p);
  int dst = place_endpoint(q);

  // Complete graph within each facet.
  g.adj.resize(g.nodes.size());
  std::set<std::pair<int, int>> seen;
  for (int f = 0; f < hull.facet_count(); ++f) {
    const auto& ns = facet_nodes[f];
    for (size_t i = 0; i < ns.size(); ++i)
      for (size_t j = i + 1; j < ns.size(); ++j) {
        int a = ns[i], b = ns[j];
        if (a == b) continue;
        auto key = std::minmax(a, b);
        if (!seen.insert(key).second) continue;
        if (opts.blocked && a != src && a != dst && opts.blocked(g.nodes[a])) continue;
        if (opts.blocked && b != src && b != dst && opts.blocked(g.nodes[b])) continue;
        double w = dist(g.nodes[a], g.nodes[b]);
        g.adj[a].push_back({b, w});
        g.adj[b].push_back({a, w});
      }
  }

  // Dijkstra, deterministic tie-break on node index.
  const double INF = std::numeric_limits<double>::max();
  std::vector<double> distv(g.nodes.size(), INF);
  std::vector<int> prev(g.nodes.size(), -1);
  using QE = std::pair<double, int>;
  std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
  distv[src] = 0.0;
  pq.push({0.0, src});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > distv[u]) continue;
    if (u == dst) break;
    for (auto [v, w] : g.adj[u]) {
      double nd = d + w;
      if (nd < distv[v] || (nd == distv[v] && prev[v] > u)) {
        distv[v] = nd;
        prev[v] = u;
        pq.push({nd, v});
      }
    }
  }
  if (distv[dst] == INF) return {};  // fully blocked

  std::vector<int> path_nodes;
  for (int u = dst; u != -1; u = prev[u]) path_nodes.push_back(u);
  std::reverse(path_nodes.begin(), path_nodes.end());

  std::vector<Vec3> path;
  std::vector<int> path_edge;
  for (int n : path_nodes) {
    path.push_back(g.nodes[n]);
    path_edge.push_back(g.node_edge[n]);
  }

  // Straightening: unfold about each interior point's hull edge and slide the
  // point to the straight crossing. Monotone non-increasing length.
  for (int pass = 0; pass < opts.straighten_passes; ++pass) {
    double improvement = 0.0;
    for (size_t i = 1; i + 1 < path.size(); ++i) {
      int e = path_edge[i];
      if (e < 0) continue;
      const Vec3& u = hull.vertices[edges[e].first];
      const Vec3& v = hull.vertices[edges[e].second];
      Vec3 axis = v - u;
      double len = norm(axis);
      if (len <= 0) continue;
      Vec3 xhat = axis / len;
      const Vec3 &a = path[i - 1], &b = path[i + 1];
      double ax = dot(a - u, xhat), bx = dot(b - u, xhat);
      double ay = norm((a - u) - xhat * ax);
      double by = norm((b - u) - xhat * bx);
      double x_star;
      if (ay + by <= 0) {
        x_star = 0.5 * (ax + bx);
      } else {
        x_star = ax + (bx - ax) * (ay / (ay + by));
      }
      x_star = std::clamp(x_star, 0.0, len);
      Vec3 cand = u + xhat * x_star;
      if (opts.blocked && opts.blocked(cand)) continue;
      double before = dist(a, path[i]) + dist(path[i], b);
      double after = dist(a, cand) + dist(cand, b);
      if (after < before) {
        improvement += before - after;
        path[i] = cand;
      }
    }
    if (improvement < 1e-12 * hull.tol.L) break;
  }

  // Drop consecutive duplicates.
  std::vector<Vec3> out;
  for (const auto& x : path)
    if (out.empty() || dist(out.back(), x) > hull.tol.point()) out.push_back(x);
  if (out.size() < 2) out = {p, q};
  out.front() = p;
  out.back() = q;
  return out;
}

}  // namespace plateau
