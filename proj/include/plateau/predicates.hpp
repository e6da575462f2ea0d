#pragma once

#include "plateau/geometry.hpp"

namespace plateau {

// Sign of the orientation determinant for (a,b,c,d): positive when d sees
// (a,b,c) in counterclockwise order. Evaluated in doubles with a forward
// error bound; falls back to exact rational arithmetic inside the bound.
// The returned sign is exact.
int orient3d(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);

// Exact sign of the 2D orientation determinant for (a,b,c).
int orient2d(double ax, double ay, double bx, double by, double cx, double cy);

// Count of times the exact fallback ran since process start (diagnostic only;
// approximate under concurrency).
long orient3d_exact_fallbacks();

}  // namespace plateau
