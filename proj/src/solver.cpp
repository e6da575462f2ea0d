#include "plateau/solver.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

namespace plateau {

// ---------------------------------------------------------------------------
// Regions
// ---------------------------------------------------------------------------

MeshRegion::MeshRegion(ClosedSurface surface, std::string label_) : surface_(std::move(surface)) {
  label = std::move(label_);
  sd_ = SignedDistance(surface_);
}

bool MeshRegion::contains(const Vec3& p) const { return sd_.signed_distance(p) < 0.0; }

double MeshRegion::boundary_distance(const Vec3& p) const {
  return std::abs(sd_.signed_distance(p));
}

Vec3 MeshRegion::project_inside(const Vec3& p, double delta) const {
  Vec3 cp, n;
  sd_.signed_distance(p, &cp, &n);
  Vec3 cand = cp - n * delta;
  if (sd_.signed_distance(cand) < 0.0) return cand;
  Vec3 cand2 = cp + n * delta;
  if (sd_.signed_distance(cand2) < 0.0) return cand2;
  return cp;
}

HalfRegion::HalfRegion(const ConvexHull& hull, std::vector<const DiskMesh*> barriers,
                       Vec3 reference, std::string label_)
    : hull_(&hull) {
  label = std::move(label_);
  hull_surface_ = hull.as_surface();
  hull_sd_ = SignedDistance(hull_surface_);
  for (const DiskMesh* m : barriers) {
    int off = int(barrier_vertices_.size());
    barrier_vertices_.insert(barrier_vertices_.end(), m->vertices.begin(), m->vertices.end());
    for (const auto& t : m->triangles)
      barrier_triangles_.push_back({t[0] + off, t[1] + off, t[2] + off});
  }
  barrier_bvh_ = TriBVH(barrier_vertices_, barrier_triangles_);
  // A few jittered references for tie-free parity queries.
  double h = 1e-4 * hull.tol.L;
  refs_ = {reference, reference + Vec3{h, 0.43 * h, -0.21 * h},
           reference + Vec3{-0.37 * h, h, 0.53 * h}, reference + Vec3{0.29 * h, -0.61 * h, h}};
}

int HalfRegion::crossing_parity(const Vec3& p) const {
  for (const auto& ref : refs_) {
    long ties = 0;
    int count = 0;
    auto cands = barrier_bvh_.segment_candidates(p, ref);
    for (int t : cands) {
      const Tri& tr = barrier_triangles_[t];
      auto h = segment_triangle_intersect(p, ref, barrier_vertices_[tr[0]],
                                          barrier_vertices_[tr[1]], barrier_vertices_[tr[2]],
                                          &ties);
      if (h) ++count;
    }
    if (ties == 0) return count % 2;
  }
  return -1;
}

bool HalfRegion::contains(const Vec3& p) const {
  if (hull_sd_.signed_distance(p) >= 0.0) return false;
  int parity = crossing_parity(p);
  return parity == 0;
}

double HalfRegion::boundary_distance(const Vec3& p) const {
  double dh = std::abs(hull_sd_.signed_distance(p));
  double db = barrier_bvh_.empty() ? std::numeric_limits<double>::max() : barrier_bvh_.distance(p);
  return std::min(dh, db);
}

Vec3 HalfRegion::project_inside(const Vec3& p, double delta) const {
  Vec3 q = p;
  for (int round = 0; round < 3; ++round) {
    bool moved = false;
    double sd = hull_sd_.signed_distance(q);
    if (sd > -delta) {
      Vec3 cp, n;
      hull_sd_.signed_distance(q, &cp, &n);
      q = cp - n * delta;
      moved = true;
    }
    int parity = crossing_parity(q);
    double db = barrier_bvh_.empty() ? std::numeric_limits<double>::max()
                                     : barrier_bvh_.distance(q);
    if (parity != 0 || db < delta) {
      int tri = -1;
      Vec3 cp = barrier_bvh_.closest_point(q, &tri);
      Vec3 n{0, 0, 1};
      if (tri >= 0) {
        const Tri& tr = barrier_triangles_[tri];
        n = triangle_normal(barrier_vertices_[tr[0]], barrier_vertices_[tr[1]],
                            barrier_vertices_[tr[2]]);
      }
      Vec3 c1 = cp + n * delta, c2 = cp - n * delta;
      if (crossing_parity(c1) == 0 && hull_sd_.signed_distance(c1) < 0)
        q = c1;
      else if (crossing_parity(c2) == 0 && hull_sd_.signed_distance(c2) < 0)
        q = c2;
      else
        q = cp + normalized(refs_[0] - cp) * delta;
      moved = true;
    }
    if (!moved) break;
  }
  return q;
}

// ---------------------------------------------------------------------------
// Seeds
// ---------------------------------------------------------------------------

namespace {

void subdivide_1to4(DiskMesh& mesh) {
  std::map<std::pair<int, int>, int> midpoint;
  auto mid = [&](int a, int b) {
    auto key = std::minmax(a, b);
    auto it = midpoint.find({key.first, key.second});
    if (it != midpoint.end()) return it->second;
    int idx = int(mesh.vertices.size());
    mesh.vertices.push_back((mesh.vertices[a] + mesh.vertices[b]) * 0.5);
    midpoint.emplace(std::pair<int, int>(key.first, key.second), idx);
    return idx;
  };
  std::vector<Tri> out;
  out.reserve(mesh.triangles.size() * 4);
  for (const auto& t : mesh.triangles) {
    int ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
    out.push_back({t[0], ab, ca});
    out.push_back({ab, t[1], bc});
    out.push_back({ca, bc, t[2]});
    out.push_back({ab, bc, ca});
  }
  mesh.triangles = std::move(out);
  std::vector<int> loop;
  int n = int(mesh.boundary_loop.size());
  for (int i = 0; i < n; ++i) {
    int a = mesh.boundary_loop[i], b = mesh.boundary_loop[(i + 1) % n];
    loop.push_back(a);
    loop.push_back(mid(a, b));
  }
  mesh.boundary_loop = std::move(loop);
  mesh.rebuild_interior_mask();
}

}  // namespace

DiskMesh initial_disk(const JordanCurve& boundary, int refine_levels) {
  DiskMesh mesh;
  int n = boundary.size();
  mesh.vertices = boundary.vertices;
  mesh.vertices.push_back(boundary.centroid());
  int center = n;
  for (int i = 0; i < n; ++i) mesh.triangles.push_back({i, (i + 1) % n, center});
  mesh.boundary_loop.resize(n);
  for (int i = 0; i < n; ++i) mesh.boundary_loop[i] = i;
  mesh.rebuild_interior_mask();
  for (int l = 0; l < refine_levels; ++l) subdivide_1to4(mesh);
  return mesh;
}

DiskMesh flat_projection_disk(const JordanCurve& boundary, int refine_levels) {
  DiskMesh mesh = initial_disk(boundary, refine_levels);
  Plane pl = best_fit_plane(boundary.vertices);
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    if (!mesh.interior_mask[v]) continue;
    mesh.vertices[v] -= pl.normal * pl.signed_distance(mesh.vertices[v]);
  }
  return mesh;
}

// ---------------------------------------------------------------------------
// Cotangent machinery
// ---------------------------------------------------------------------------

namespace {

struct EdgeWeights {
  std::map<std::pair<int, int>, double> w;  // clamped weights
  long clamped = 0;
  double clamped_fraction = 0.0;
};

double cot_at(const Vec3& apex, const Vec3& a, const Vec3& b) {
  Vec3 u = a - apex, v = b - apex;
  double cr = norm(cross(u, v));
  if (cr <= 1e-300) return 0.0;
  return dot(u, v) / cr;
}

EdgeWeights cotangent_weights(const DiskMesh& mesh, bool clamp) {
  EdgeWeights ew;
  for (const auto& t : mesh.triangles) {
    const Vec3 &a = mesh.vertices[t[0]], &b = mesh.vertices[t[1]], &c = mesh.vertices[t[2]];
    double ca = cot_at(a, b, c);  // opposite edge bc
    double cb = cot_at(b, c, a);  // opposite edge ca
    double cc = cot_at(c, a, b);  // opposite edge ab
    auto add = [&](int u, int v, double w) {
      auto key = std::minmax(u, v);
      ew.w[{key.first, key.second}] += 0.5 * w;
    };
    add(t[1], t[2], ca);
    add(t[2], t[0], cb);
    add(t[0], t[1], cc);
  }
  if (clamp) {
    long total = 0;
    for (auto& [k, w] : ew.w) {
      ++total;
      if (w < 0.0) {
        w = 0.0;
        ++ew.clamped;
      }
    }
    ew.clamped_fraction = total ? double(ew.clamped) / double(total) : 0.0;
  }
  return ew;
}

// Delaunay-style flip pass: flip interior edges with negative cotangent
// weight when the flip keeps a valid disk and does not increase area.
long flip_pass(DiskMesh& mesh) {
  long flips = 0;
  auto edges = build_edge_map(mesh.triangles);
  std::set<std::pair<int, int>> existing;
  for (const auto& [e, tris] : edges) existing.insert(e);

  for (const auto& [e, tris] : edges) {
    if (tris.size() != 2) continue;
    int t1 = tris[0], t2 = tris[1];
    Tri& T1 = mesh.triangles[t1];
    Tri& T2 = mesh.triangles[t2];
    int a = e.first, b = e.second;
    // Earlier flips may have retired this edge; the map entry is then stale.
    auto has_vertex = [](const Tri& t, int v) { return t[0] == v || t[1] == v || t[2] == v; };
    if (!has_vertex(T1, a) || !has_vertex(T1, b) || !has_vertex(T2, a) || !has_vertex(T2, b))
      continue;
    auto third = [&](const Tri& t) {
      for (int k = 0; k < 3; ++k)
        if (t[k] != a && t[k] != b) return t[k];
      return -1;
    };
    int c = third(T1), d = third(T2);
    if (c < 0 || d < 0 || c == d) continue;
    double w = cot_at(mesh.vertices[c], mesh.vertices[a], mesh.vertices[b]) +
               cot_at(mesh.vertices[d], mesh.vertices[a], mesh.vertices[b]);
    if (w >= 0.0) continue;  // Delaunay already
    auto key = std::minmax(c, d);
    if (existing.count({key.first, key.second})) continue;
    double before = triangle_area(mesh.vertices[T1[0]], mesh.vertices[T1[1]], mesh.vertices[T1[2]]) +
                    triangle_area(mesh.vertices[T2[0]], mesh.vertices[T2[1]], mesh.vertices[T2[2]]);
    double after = triangle_area(mesh.vertices[c], mesh.vertices[a], mesh.vertices[d]) +
                   triangle_area(mesh.vertices[c], mesh.vertices[d], mesh.vertices[b]);
    if (after > before + 1e-15 * before) continue;
    double a1 = triangle_area(mesh.vertices[c], mesh.vertices[a], mesh.vertices[d]);
    double a2 = triangle_area(mesh.vertices[c], mesh.vertices[d], mesh.vertices[b]);
    if (a1 <= 0 || a2 <= 0) continue;
    // Orient the new pair consistently with the old ccw order of T1 = (. a b .)
    bool t1_ab = false;
    for (int k = 0; k < 3; ++k)
      if (T1[k] == a && T1[(k + 1) % 3] == b) t1_ab = true;
    int aa = t1_ab ? a : b, bb = t1_ab ? b : a;
    T1 = {c, aa, d};
    T2 = {c, d, bb};
    existing.erase(e);
    existing.insert({key.first, key.second});
    ++flips;
  }
  return flips;
}

}  // namespace

std::vector<Vec3> area_gradient(const DiskMesh& mesh) {
  std::vector<Vec3> grad(mesh.vertex_count(), Vec3{0, 0, 0});
  EdgeWeights ew = cotangent_weights(mesh, false);
  for (const auto& [e, w] : ew.w) {
    Vec3 d = mesh.vertices[e.first] - mesh.vertices[e.second];
    grad[e.first] += d * w;
    grad[e.second] -= d * w;
  }
  return grad;
}

ResidualReport mean_curvature_residual(const DiskMesh& mesh) {
  ResidualReport rep;
  rep.per_vertex.assign(mesh.vertex_count(), 0.0);
  std::vector<Vec3> grad = area_gradient(mesh);

  // Mixed (Voronoi) vertex areas, Meyer et al.; obtuse triangles fall back to
  // half/quarter area.
  std::vector<double> mixed(mesh.vertex_count(), 0.0);
  for (const auto& t : mesh.triangles) {
    const Vec3* p[3] = {&mesh.vertices[t[0]], &mesh.vertices[t[1]], &mesh.vertices[t[2]]};
    double area = triangle_area(*p[0], *p[1], *p[2]);
    double cots[3];
    bool obtuse = false;
    int obtuse_at = -1;
    for (int k = 0; k < 3; ++k) {
      cots[k] = cot_at(*p[k], *p[(k + 1) % 3], *p[(k + 2) % 3]);
      if (cots[k] < 0) {
        obtuse = true;
        obtuse_at = k;
      }
    }
    if (!obtuse) {
      for (int k = 0; k < 3; ++k) {
        double l_next = dist2(*p[k], *p[(k + 1) % 3]);
        double l_prev = dist2(*p[k], *p[(k + 2) % 3]);
        mixed[t[k]] += (l_next * cots[(k + 2) % 3] + l_prev * cots[(k + 1) % 3]) / 8.0;
      }
    } else {
      for (int k = 0; k < 3; ++k) mixed[t[k]] += (k == obtuse_at) ? area / 2.0 : area / 4.0;
    }
  }

  double L = mesh.bbox().diagonal();
  if (L <= 0) L = 1.0;
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    bool free_v = v < int(mesh.interior_mask.size()) && mesh.interior_mask[v];
    double Ai = mixed[v];
    // |grad_i| = A_i * |H_i| with H the curvature sum (2/r on a sphere of
    // radius r).
    double H = Ai > 0 ? norm(grad[v]) / Ai : 0.0;
    rep.per_vertex[v] = free_v ? H : 0.0;
    if (free_v) {
      rep.max_interior = std::max(rep.max_interior, H);
      rep.max_gradient_scaled = std::max(rep.max_gradient_scaled, norm(grad[v]) / L);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Solver core
// ---------------------------------------------------------------------------

namespace {

struct SolveContext {
  const Region* region = nullptr;
  double delta = 0.0;
};

SolveStats run_solver(DiskMesh& mesh, const SolverConfig& cfg, const Region* region) {
  SolveStats stats;
  double L = mesh.bbox().diagonal();
  if (L <= 0) L = 1.0;
  stats.L = L;
  double delta = cfg.barrier_offset_rel * L;

  if (int(mesh.interior_mask.size()) != mesh.vertex_count()) mesh.rebuild_interior_mask();

  std::vector<int> free_ids;
  std::vector<int> col(mesh.vertex_count(), -1);
  for (int v = 0; v < mesh.vertex_count(); ++v)
    if (mesh.interior_mask[v]) {
      col[v] = int(free_ids.size());
      free_ids.push_back(v);
    }
  int m = int(free_ids.size());

  if (region) {
    for (int b : mesh.boundary_loop) {
      const Vec3& x = mesh.vertices[b];
      if (!region->contains(x) && region->boundary_distance(x) > 10 * delta)
        throw BoundaryOutsideRegion("constrained solve: boundary vertex outside region (" +
                                    region->label + ")");
    }
    // Initial feasibility pass.
    for (int v : free_ids) {
      const Vec3& x = mesh.vertices[v];
      if (!region->contains(x) || region->boundary_distance(x) < delta)
        mesh.vertices[v] = region->project_inside(x, delta);
    }
  }

  double area_prev = mesh.total_area();
  stats.area_trace.push_back(area_prev);

  auto residual_excluding_contacts = [&](int* contact_out) {
    std::vector<Vec3> grad = area_gradient(mesh);
    double rmax = 0.0;
    int contacts = 0;
    for (int v : free_ids) {
      bool contact = false;
      if (region && region->boundary_distance(mesh.vertices[v]) <= 1.5 * delta) {
        contact = true;
        ++contacts;
      }
      if (!contact) rmax = std::max(rmax, norm(grad[v]) / L);
    }
    if (contact_out) *contact_out = contacts;
    return rmax;
  };

  if (m == 0) {
    stats.converged = true;
    stats.final_area = area_prev;
    stats.final_residual = 0.0;
    return stats;
  }

  using SpMat = Eigen::SparseMatrix<double>;
  using Triplet = Eigen::Triplet<double>;

  int stalled = 0;
  double stall_res = std::numeric_limits<double>::max();
  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    ++stats.iterations;
    EdgeWeights ew = cotangent_weights(mesh, true);
    stats.clamped_edges_total += ew.clamped;
    if (ew.clamped_fraction > 0.05) {
      long flips = flip_pass(mesh);
      stats.flips_total += flips;
      if (flips > 0) ew = cotangent_weights(mesh, true);
    }

    // Row sums; umbrella fallback for fully clamped stars.
    std::vector<double> row_sum(mesh.vertex_count(), 0.0);
    for (const auto& [e, w] : ew.w) {
      row_sum[e.first] += w;
      row_sum[e.second] += w;
    }
    std::map<std::pair<int, int>, double> weights;
    for (const auto& [e, w] : ew.w) weights[e] = w;
    for (int v : free_ids) {
      if (row_sum[v] > 1e-14) continue;
      for (auto& [e, w] : weights) {
        if (e.first == v || e.second == v) {
          w = 1.0;
          ++stats.clamped_edges_total;
        }
      }
    }

    std::vector<Triplet> trip;
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(m, 3);
    std::vector<double> diag(m, 0.0);
    for (const auto& [e, w] : weights) {
      if (w == 0.0) continue;
      int a = e.first, b = e.second;
      int ca = col[a], cb = col[b];
      if (ca >= 0) diag[ca] += w;
      if (cb >= 0) diag[cb] += w;
      if (ca >= 0 && cb >= 0) {
        trip.push_back(Triplet(ca, cb, -w));
        trip.push_back(Triplet(cb, ca, -w));
      } else if (ca >= 0) {
        const Vec3& xb = mesh.vertices[b];
        rhs(ca, 0) += w * xb.x;
        rhs(ca, 1) += w * xb.y;
        rhs(ca, 2) += w * xb.z;
      } else if (cb >= 0) {
        const Vec3& xa = mesh.vertices[a];
        rhs(cb, 0) += w * xa.x;
        rhs(cb, 1) += w * xa.y;
        rhs(cb, 2) += w * xa.z;
      }
    }
    for (int i = 0; i < m; ++i) trip.push_back(Triplet(i, i, diag[i] > 1e-14 ? diag[i] : 1.0));

    SpMat A(m, m);
    A.setFromTriplets(trip.begin(), trip.end());
    Eigen::SimplicialLDLT<SpMat> ldlt(A);
    if (ldlt.info() != Eigen::Success) break;
    Eigen::MatrixXd X = ldlt.solve(rhs);

    std::vector<Vec3> prev(mesh.vertex_count());
    for (int v = 0; v < mesh.vertex_count(); ++v) prev[v] = mesh.vertices[v];
    std::vector<Vec3> target = prev;
    for (int i = 0; i < m; ++i) target[free_ids[i]] = Vec3{X(i, 0), X(i, 1), X(i, 2)};

    // Backtracking keeps the area trace monotone even with projection.
    bool accepted = false;
    double area_new = area_prev;
    for (double t : {1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125}) {
      for (int i = 0; i < m; ++i) {
        int v = free_ids[i];
        mesh.vertices[v] = prev[v] + (target[v] - prev[v]) * t;
      }
      if (region) {
        for (int v : free_ids) {
          const Vec3& x = mesh.vertices[v];
          if (!region->contains(x) || region->boundary_distance(x) < delta)
            mesh.vertices[v] = region->project_inside(x, delta);
        }
      }
      area_new = mesh.total_area();
      if (area_new <= area_prev + 1e-15 * (1.0 + area_prev)) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // No feasible descent left (typically a bound contact set).
      for (int v = 0; v < mesh.vertex_count(); ++v) mesh.vertices[v] = prev[v];
      break;
    }

    stats.area_trace.push_back(area_new);
    double rel_change = std::abs(area_prev - area_new) / std::max(stats.area_trace.front(), 1e-300);
    area_prev = area_new;

    if (rel_change < cfg.area_tol) {
      ++stalled;
      double res = residual_excluding_contacts(nullptr);
      if (res <= cfg.residual_tol) break;
      // Clamped negative cotangents bias the fixed point; Delaunay flips
      // restore it. Give up once the residual plateaus despite flips.
      if (stalled == 1) {
        long flips = flip_pass(mesh);
        stats.flips_total += flips;
      }
      if (stalled % 40 == 0) {
        long flips = flip_pass(mesh);
        stats.flips_total += flips;
        if (flips == 0 && res > 0.7 * stall_res) break;
        stall_res = res;
      }
    } else {
      stalled = 0;
    }
  }

  stats.final_area = mesh.total_area();
  stats.final_residual = residual_excluding_contacts(&stats.contact_count);
  stats.converged = stats.final_residual <= cfg.residual_tol;
  if (!stats.converged && stats.iterations >= cfg.max_iterations &&
      stats.final_residual > 10.0 * cfg.residual_tol)
    stats.nonconvergence = true;
  return stats;
}

}  // namespace

SolveStats minimize_area(DiskMesh& mesh, const SolverConfig& config) {
  return run_solver(mesh, config, nullptr);
}

SolveStats minimize_area_constrained(DiskMesh& mesh, const Region& region,
                                     const SolverConfig& config) {
  return run_solver(mesh, config, &region);
}

StabilityReport stability_probe(const DiskMesh& mesh, double amplitude_rel, int trials,
                                unsigned long long seed) {
  StabilityReport rep;
  rep.trials = trials;
  double L = mesh.bbox().diagonal();
  if (L <= 0) L = 1.0;
  double amp = amplitude_rel * L;
  double A0 = mesh.total_area();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);

  DiskMesh work = mesh;
  double min_delta = std::numeric_limits<double>::max();
  for (int t = 0; t < trials; ++t) {
    for (int v = 0; v < mesh.vertex_count(); ++v) {
      if (!mesh.interior_mask[v]) {
        work.vertices[v] = mesh.vertices[v];
        continue;
      }
      Vec3 d;
      do {
        d = Vec3{uni(rng), uni(rng), uni(rng)};
      } while (norm2(d) > 1.0);
      work.vertices[v] = mesh.vertices[v] + d * amp;
    }
    double delta = work.total_area() - A0;
    min_delta = std::min(min_delta, delta);
  }
  rep.min_area_delta = min_delta;
  rep.stable = min_delta >= -1e-9 * A0;
  return rep;
}

}  // namespace plateau
