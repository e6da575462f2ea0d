#pragma once

#include "plateau/curve.hpp"
#include "plateau/errors.hpp"
#include "plateau/geometry.hpp"
#include "plateau/mesh.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace plateau {

// Triangulated boundary of the convex hull of a point set. For coplanar
// input (planar mode) the boundary is the doubled 2-D hull polygon: two
// coincident triangulated sheets with opposite normals. on_hull then means
// "inside-or-on the planar hull region".
struct ConvexHull {
  std::vector<Vec3> input_points;
  std::vector<Vec3> vertices;        // hull vertices (strictly extreme points)
  std::vector<int> vertex_source;    // index into input_points
  std::vector<Tri> facets;           // outward counterclockwise
  std::vector<Vec3> facet_normals;   // unit outward normals
  std::vector<double> facet_offsets; // plane: dot(n, x) = offset
  Vec3 interior_point;               // strictly inside (3D mode only)
  bool planar = false;
  Plane plane;                       // planar mode best-fit plane
  std::vector<int> planar_polygon;   // planar mode: hull polygon (vertex indices, ccw in plane)

  Tolerances tol;

  int facet_count() const { return int(facets.size()); }

  // max over facets of signed plane distance; <= 0 inside (3D mode).
  double max_facet_distance(const Vec3& p) const;

  ClosedSurface as_surface() const;
};

// Convex hull of >= 4 points. Throws DegenerateHull when the input is
// coplanar within tolerance (or has < 4 distinct points); use
// build_hull_planar_ok where planar inputs are legitimate.
ConvexHull build_hull(const std::vector<Vec3>& points, double tol_scale = 1.0);

// Same, but coplanar input yields the planar-mode hull. Throws only when the
// points are collinear.
ConvexHull build_hull_planar_ok(const std::vector<Vec3>& points, double tol_scale = 1.0);

// True iff p is within on-surface tolerance of the hull boundary and not
// strictly outside.
bool on_hull(const Vec3& p, const ConvexHull& hull);

// Distance from p to the hull boundary (positive outside and inside).
double hull_boundary_distance(const Vec3& p, const ConvexHull& hull);

// Def 2.4: every vertex of the curve on the boundary of its own hull.
bool is_extreme_curve(const JordanCurve& curve, double tol_scale = 1.0);

// True iff the straight segment pq lies on the hull boundary (sampled plus a
// convex minimization of the interior-depth along the segment).
bool segment_on_hull(const Vec3& p, const Vec3& q, const ConvexHull& hull);

struct GeodesicOptions {
  int steiner_per_edge = 4;
  int straighten_passes = 60;
  // Nodes rejected by this predicate are removed from the graph (used by the
  // routing retries to steer paths away from earlier arcs).
  std::function<bool(const Vec3&)> blocked;
};

// Polyline on the hull boundary approximating the geodesic from p to q:
// Dijkstra over the facet graph with Steiner points, then iterative
// straightening by unfolding about the crossed edges. Throws PointNotOnHull.
// Returns an empty vector when every route is blocked.
std::vector<Vec3> surface_shortest_path(const ConvexHull& hull, const Vec3& p, const Vec3& q,
                                        const GeodesicOptions& opts = {});

double polyline_length(const std::vector<Vec3>& pts);

}  // namespace plateau
