#pragma once

#include "plateau/bvh.hpp"
#include "plateau/curve.hpp"
#include "plateau/errors.hpp"
#include "plateau/hull.hpp"
#include "plateau/intersect.hpp"
#include "plateau/mesh.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace plateau {

struct SolverConfig {
  int max_iterations = 2000;
  double area_tol = 1e-7;        // relative area change stop threshold
  double residual_tol = 1e-4;    // max |area gradient| / L over free vertices
  int refine_levels = 3;
  double barrier_offset_rel = 1e-3;  // delta, relative to L
  double tol_scale = 1.0;
  unsigned long long seed = 1234567;  // RNG seed (stability probe)
};

// Confinement region for constrained solves. Implementations must be safe to
// query concurrently.
class Region {
 public:
  virtual ~Region() = default;
  virtual bool contains(const Vec3& p) const = 0;
  virtual double boundary_distance(const Vec3& p) const = 0;
  virtual Vec3 project_inside(const Vec3& p, double delta) const = 0;
  virtual const ClosedSurface* boundary_mesh() const { return nullptr; }

  std::string label;
};

// Region bounded by a closed, embedded, consistently outward-oriented mesh.
class MeshRegion : public Region {
 public:
  explicit MeshRegion(ClosedSurface surface, std::string label_ = "");

  bool contains(const Vec3& p) const override;
  double boundary_distance(const Vec3& p) const override;
  Vec3 project_inside(const Vec3& p, double delta) const override;
  const ClosedSurface* boundary_mesh() const override { return &surface_; }

 private:
  ClosedSurface surface_;
  SignedDistance sd_;
};

// One side of a disk-type barrier inside a convex hull: the component of
// hull \ (barrier sheets) containing the reference point. Membership is the
// crossing parity of the segment to the reference.
class HalfRegion : public Region {
 public:
  HalfRegion(const ConvexHull& hull, std::vector<const DiskMesh*> barriers, Vec3 reference,
             std::string label_ = "");

  bool contains(const Vec3& p) const override;
  double boundary_distance(const Vec3& p) const override;
  Vec3 project_inside(const Vec3& p, double delta) const override;

  // Parity of transversal barrier crossings from p to the reference
  // (0 = same side). -1 when no tie-free answer exists.
  int crossing_parity(const Vec3& p) const;

 private:
  const ConvexHull* hull_;
  ClosedSurface hull_surface_;
  SignedDistance hull_sd_;
  std::vector<Vec3> barrier_vertices_;
  std::vector<Tri> barrier_triangles_;
  TriBVH barrier_bvh_;
  std::vector<Vec3> refs_;
};

struct SolveStats {
  std::vector<double> area_trace;  // recorded after every accepted iteration
  int iterations = 0;
  bool converged = false;
  bool nonconvergence = false;  // max iterations with residual > 10x tolerance
  double final_area = 0.0;
  double final_residual = 0.0;  // max |area gradient| / L over non-contact free vertices
  long clamped_edges_total = 0;
  long flips_total = 0;
  int contact_count = 0;  // free vertices resting on the region boundary
  double L = 1.0;
};

// Fan triangulation over the boundary centroid, then 1-to-4 subdivision.
// Boundary vertices stay bit-identical to the curve; subdivision points lie
// on the polygonal boundary.
DiskMesh initial_disk(const JordanCurve& boundary, int refine_levels);

// Seed variant: interior vertices flattened onto the boundary's best-fit plane.
DiskMesh flat_projection_disk(const JordanCurve& boundary, int refine_levels);

// Iterated cotangent-Laplace area minimization with fixed boundary.
SolveStats minimize_area(DiskMesh& mesh, const SolverConfig& config);

// Same scheme confined to a region: after each step, vertices outside or
// within delta of the boundary are projected to delta inside.
SolveStats minimize_area_constrained(DiskMesh& mesh, const Region& region,
                                     const SolverConfig& config);

struct ResidualReport {
  std::vector<double> per_vertex;  // |H| per vertex (0 on fixed vertices)
  double max_interior = 0.0;       // max |H| over free vertices
  double max_gradient_scaled = 0.0;  // max |dArea/dx_i| / L (solver metric)
};
ResidualReport mean_curvature_residual(const DiskMesh& mesh);

// Area gradient at every vertex (0.5 * sum of cotangent-weighted edges);
// exposed for the finite-difference check.
std::vector<Vec3> area_gradient(const DiskMesh& mesh);

struct StabilityReport {
  bool stable = false;
  double min_area_delta = 0.0;
  int trials = 0;
};
// Random interior perturbations of the given relative amplitude; stable iff
// no trial decreases area beyond 1e-9 relative slack.
StabilityReport stability_probe(const DiskMesh& mesh, double amplitude_rel = 1e-3,
                                int trials = 50, unsigned long long seed = 1234567);

}  // namespace plateau
