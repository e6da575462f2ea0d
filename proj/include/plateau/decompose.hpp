#pragma once

#include "plateau/curve.hpp"
#include "plateau/errors.hpp"
#include "plateau/hull.hpp"

#include <optional>
#include <vector>

namespace plateau {

enum class RouteMode { StraightPreferred, ShortestPath };

struct RoutedArc {
  std::vector<Vec3> polyline;  // endpoint-to-endpoint, every vertex on the hull
  bool is_chord = false;
  int retries = 0;
};

// Decomposition of a curve relative to its convex hull: hull-contact arcs
// alpha_i, off-hull hooks beta_i (with their bounding contact endpoints),
// routed replacement arcs l_i, and the assembled hull curve(s) gamma-hat.
struct Decomposition {
  JordanCurve curve;
  ConvexHull hull;
  std::vector<bool> vertex_on_hull;

  // Index runs into curve.vertices, in traversal order. alpha[i] precedes
  // beta[i]; beta[i] includes its bounding on-hull endpoints.
  std::vector<std::vector<int>> alpha;
  std::vector<std::vector<int>> beta;

  std::vector<RoutedArc> routed;  // l_i, one per hook once routed

  // gamma-hat as closed vertex loops; one loop normally, several when
  // routing could not keep it embedded (each then shares crossing points).
  std::vector<std::vector<Vec3>> gamma_hat;
  bool multi_loop = false;
  int crossings = 0;

  std::vector<JordanCurve> hooks;  // beta-hat_i = beta_i followed by reversed l_i

  // Filled by the classifier's side partition: +1 / -1 per hook.
  std::vector<int> side;

  std::vector<Vec3> gamma_hat_plus;
  std::vector<Vec3> gamma_hat_minus;

  int n() const { return int(beta.size()); }
  Vec3 hook_start(int i) const { return curve.vertices[beta[i].front()]; }
  Vec3 hook_end(int i) const { return curve.vertices[beta[i].back()]; }

  // beta_i as a coordinate polyline.
  std::vector<Vec3> beta_polyline(int i) const;
};

// Classify every curve vertex against the hull and split into maximal runs.
// The hull must be built from the curve's own vertices.
Decomposition extract_gamma_star(const JordanCurve& curve, const ConvexHull& hull);

// Absorb hull-contact runs shorter than min_run vertices into the adjacent
// hooks (discrete tameness). Keeps at least one contact run.
Decomposition merge_fragments(const Decomposition& d, int min_run = 2);

// Route the replacement arcs l_i. straight_preferred uses the chord whenever
// it lies on the hull; conflicts trigger deterministic rerouting retries and
// finally the multi-loop split.
Decomposition route_arcs(const Decomposition& d, RouteMode mode,
                         const GeodesicOptions& geo = {});

// Assemble the closed hooks and gamma-hat loop(s); verifies hook simplicity
// and the symmetric-difference reconstruction identity.
Decomposition build_hooks_and_gamma_hat(const Decomposition& d);

// gamma-hat-plus / minus for a given side assignment (single-loop only).
Decomposition build_signed_curves(const Decomposition& d, const std::vector<int>& side);

// Closed-polyline simplicity: non-adjacent segments separated by more
// than tol.
bool polyline_loop_simple(const std::vector<Vec3>& loop, double tol);

}  // namespace plateau
