#include "plateau/mesh.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace plateau {

double DiskMesh::total_area() const {
  double a = 0.0;
  for (const auto& t : triangles)
    a += triangle_area(vertices[t[0]], vertices[t[1]], vertices[t[2]]);
  return a;
}

void DiskMesh::rebuild_interior_mask() {
  interior_mask.assign(vertices.size(), true);
  for (int v : boundary_loop) interior_mask[v] = false;
}

std::map<std::pair<int, int>, std::vector<int>> build_edge_map(const std::vector<Tri>& triangles) {
  std::map<std::pair<int, int>, std::vector<int>> edges;
  for (int t = 0; t < int(triangles.size()); ++t) {
    for (int e = 0; e < 3; ++e) {
      int a = triangles[t][e], b = triangles[t][(e + 1) % 3];
      if (a > b) std::swap(a, b);
      edges[{a, b}].push_back(t);
    }
  }
  return edges;
}

MeshChecks check_disk_mesh(const DiskMesh& mesh) {
  MeshChecks c;
  c.vertex_count = mesh.vertex_count();
  c.triangle_count = mesh.triangle_count();
  auto edges = build_edge_map(mesh.triangles);
  c.edge_count = int(edges.size());
  c.euler = c.vertex_count - c.edge_count + c.triangle_count;

  c.edges_manifold = true;
  std::map<int, std::vector<int>> boundary_adj;  // vertex -> neighbors along boundary edges
  int boundary_edges = 0;
  for (const auto& [e, tris] : edges) {
    if (tris.size() > 2) c.edges_manifold = false;
    if (tris.size() == 1) {
      ++boundary_edges;
      boundary_adj[e.first].push_back(e.second);
      boundary_adj[e.second].push_back(e.first);
    }
  }

  // Walk the boundary: a disk has exactly one closed loop of boundary edges.
  c.single_boundary = false;
  if (boundary_edges >= 3) {
    bool degree_ok = true;
    for (const auto& [v, nb] : boundary_adj)
      if (nb.size() != 2) degree_ok = false;
    if (degree_ok) {
      int start = boundary_adj.begin()->first;
      int prev = -1, cur = start, steps = 0;
      do {
        const auto& nb = boundary_adj[cur];
        int next = (nb[0] == prev) ? nb[1] : nb[0];
        prev = cur;
        cur = next;
        ++steps;
      } while (cur != start && steps <= boundary_edges + 1);
      c.single_boundary = (cur == start && steps == boundary_edges);
    }
  }

  double total = mesh.total_area();
  double min_area = std::numeric_limits<double>::max();
  for (const auto& t : mesh.triangles)
    min_area =
        std::min(min_area, triangle_area(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]));
  if (mesh.triangles.empty()) min_area = 0.0;
  c.min_triangle_area = min_area;
  c.no_degenerate =
      mesh.triangle_count() > 0 && min_area > 1e-12 * (total / double(mesh.triangle_count()));

  c.is_disk = c.edges_manifold && c.single_boundary && c.euler == 1;
  return c;
}

bool boundary_matches_curve(const DiskMesh& mesh, const JordanCurve& curve) {
  int nb = int(mesh.boundary_loop.size());
  int nc = curve.size();
  if (nb < nc || nc == 0) return false;
  // Find the curve's first vertex in the loop, then require all curve
  // vertices to appear bit-identically in cyclic order (either direction).
  for (int dir : {+1, -1}) {
    for (int start = 0; start < nb; ++start) {
      if (!(mesh.vertices[mesh.boundary_loop[start]] == curve.vertices[0])) continue;
      int pos = start;
      bool ok = true;
      for (int k = 1; k <= nc; ++k) {
        const Vec3& target = curve.vertices[k % nc];
        int advanced = 0;
        do {
          pos = ((pos + dir) % nb + nb) % nb;
          ++advanced;
        } while (!(mesh.vertices[mesh.boundary_loop[pos]] == target) && advanced < nb);
        if (!(mesh.vertices[mesh.boundary_loop[pos]] == target)) {
          ok = false;
          break;
        }
      }
      if (ok && pos == start) return true;
    }
  }
  return false;
}

double ClosedSurface::total_area() const {
  double a = 0.0;
  for (const auto& t : triangles)
    a += triangle_area(vertices[t[0]], vertices[t[1]], vertices[t[2]]);
  return a;
}

double ClosedSurface::signed_volume() const {
  double v = 0.0;
  for (const auto& t : triangles)
    v += dot(vertices[t[0]], cross(vertices[t[1]], vertices[t[2]])) / 6.0;
  return v;
}

ClosedChecks check_closed_surface(const ClosedSurface& s) {
  ClosedChecks c;
  c.vertex_count = s.vertex_count();
  c.triangle_count = s.triangle_count();
  auto edges = build_edge_map(s.triangles);
  c.edge_count = int(edges.size());
  c.euler = c.vertex_count - c.edge_count + c.triangle_count;

  c.closed = true;
  for (const auto& [e, tris] : edges)
    if (tris.size() != 2) c.closed = false;

  // Consistent orientation: each shared edge traversed in opposite directions.
  c.consistently_oriented = c.closed;
  if (c.closed) {
    std::map<std::pair<int, int>, int> directed;
    for (const auto& t : s.triangles) {
      for (int e = 0; e < 3; ++e) {
        int a = t[e], b = t[(e + 1) % 3];
        directed[{a, b}]++;
      }
    }
    for (const auto& [e, count] : directed) {
      if (count != 1) {
        c.consistently_oriented = false;
        break;
      }
      if (!directed.count({e.second, e.first})) {
        c.consistently_oriented = false;
        break;
      }
    }
  }
  return c;
}

WeldResult weld_by_coordinates(const std::vector<const DiskMesh*>& pieces) {
  WeldResult out;
  std::map<Vec3, int> index_of;
  for (int p = 0; p < int(pieces.size()); ++p) {
    const DiskMesh& m = *pieces[p];
    std::vector<int> remap(m.vertices.size());
    for (int v = 0; v < int(m.vertices.size()); ++v) {
      auto it = index_of.find(m.vertices[v]);
      if (it == index_of.end()) {
        int idx = int(out.vertices.size());
        out.vertices.push_back(m.vertices[v]);
        index_of.emplace(m.vertices[v], idx);
        remap[v] = idx;
      } else {
        remap[v] = it->second;
      }
    }
    for (const auto& t : m.triangles) {
      out.triangles.push_back({remap[t[0]], remap[t[1]], remap[t[2]]});
      out.piece_of_triangle.push_back(p);
    }
  }
  return out;
}

bool orient_consistently(std::vector<Tri>& triangles) {
  auto edges = build_edge_map(triangles);
  std::vector<int> state(triangles.size(), 0);  // 0 unvisited, 1 kept, -1 flipped
  auto has_directed = [&](const Tri& t, int a, int b) {
    for (int e = 0; e < 3; ++e)
      if (t[e] == a && t[(e + 1) % 3] == b) return true;
    return false;
  };
  for (int seed = 0; seed < int(triangles.size()); ++seed) {
    if (state[seed] != 0) continue;
    state[seed] = 1;
    std::queue<int> q;
    q.push(seed);
    while (!q.empty()) {
      int t = q.front();
      q.pop();
      for (int e = 0; e < 3; ++e) {
        int a = triangles[t][e], b = triangles[t][(e + 1) % 3];
        auto key = std::minmax(a, b);
        for (int other : edges[{key.first, key.second}]) {
          if (other == t) continue;
          bool other_same_dir = has_directed(triangles[other], a, b);
          int needed = other_same_dir ? -1 : 1;  // same direction means other must flip
          if (state[other] == 0) {
            if (needed == -1) std::swap(triangles[other][0], triangles[other][1]);
            state[other] = 1;
            q.push(other);
          } else {
            // Already fixed; verify compatibility.
            bool now_same = has_directed(triangles[other], a, b);
            if (now_same) return false;
          }
        }
      }
    }
  }
  return true;
}

}  // namespace plateau
