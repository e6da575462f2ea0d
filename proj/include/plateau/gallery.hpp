#pragma once

#include "plateau/curve.hpp"

#include <string>
#include <vector>

namespace plateau {
namespace gallery {

// All generators are deterministic: identical parameters give bit-identical
// curves. Every generator emits a curve passing validate_curve.

// Regular planar n-gon of the given radius (baseline extreme curve).
JordanCurve circle(double radius, int n);

// Closed curve on the sphere of the given radius: latitude oscillates with
// `lobes` periods around the equator. Extreme by construction.
JordanCurve sphere_wave(double radius, int lobes, double amplitude, int n);

// Circle with one arc pulled into a narrow hook that dives under the disk's
// spanning region and pokes back up through it before returning to the rim:
// the classic non-extreme configuration whose hook stabs the core.
JordanCurve hooked_circle(double radius, double hook_depth, double hook_width, int n);

// Slit-cylinder family with wavy rims and two short radial hooks on the slit
// edges. Hooks bend inward at the slit where every core sheet attaches
// edge-on, so all three weak-extreme conditions hold by construction.
// r scales the can (rim radius r/4), w the hook size.
JordanCurve weak_extreme_rw(double r, double w, int n);

// Splice a thin hook at the given arc-length parameter [0,1): a planar
// dive / run / poke-back profile of the given depth, entering and leaving
// the curve `width` apart. depth = 0 returns the curve unchanged.
JordanCurve add_thin_hook(const JordanCurve& curve, double attach_param, double depth,
                          double width);

// Splice a thin two-sided excursion of the given length along `direction`
// at the curve vertex extremal in that direction; enlarges the hull while
// barely changing the least area. length = 0 returns the curve unchanged.
JordanCurve add_thin_tail(const JordanCurve& curve, const Vec3& direction, double length,
                          double width);

// Standard trefoil (torus-knot) sampling.
JordanCurve trefoil(double scale, int n);

// Spherical spiral winding beyond a full turn, closed by a straight chord:
// the shortest hull path between the chord's endpoints has to cross the
// spiral, so the straightened curve stops being embedded.
JordanCurve fig3_config(int n);

struct CurveSpec {
  std::string family;
  std::vector<double> params;
  int n = 0;
};

// Dispatch by family name (CLI `generate`). Throws InvalidInput for unknown
// families or bad parameter counts.
JordanCurve generate(const CurveSpec& spec);

}  // namespace gallery
}  // namespace plateau
