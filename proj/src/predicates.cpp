#include "plateau/predicates.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <atomic>
#include <cmath>

namespace plateau {

namespace {

std::atomic<long> g_exact_calls{0};

using BigRat = boost::multiprecision::cpp_rational;

int sign_of(const BigRat& v) {
  if (v > 0) return 1;
  if (v < 0) return -1;
  return 0;
}

int orient3d_exact(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  ++g_exact_calls;
  BigRat adx = BigRat(a.x) - BigRat(d.x), ady = BigRat(a.y) - BigRat(d.y),
         adz = BigRat(a.z) - BigRat(d.z);
  BigRat bdx = BigRat(b.x) - BigRat(d.x), bdy = BigRat(b.y) - BigRat(d.y),
         bdz = BigRat(b.z) - BigRat(d.z);
  BigRat cdx = BigRat(c.x) - BigRat(d.x), cdy = BigRat(c.y) - BigRat(d.y),
         cdz = BigRat(c.z) - BigRat(d.z);
  BigRat det = adx * (bdy * cdz - bdz * cdy) - ady * (bdx * cdz - bdz * cdx) +
               adz * (bdx * cdy - bdy * cdx);
  return sign_of(det);
}

int orient2d_exact(double ax, double ay, double bx, double by, double cx, double cy) {
  BigRat det = (BigRat(ax) - BigRat(cx)) * (BigRat(by) - BigRat(cy)) -
               (BigRat(ay) - BigRat(cy)) * (BigRat(bx) - BigRat(cx));
  return sign_of(det);
}

}  // namespace

int orient3d(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  double adx = a.x - d.x, ady = a.y - d.y, adz = a.z - d.z;
  double bdx = b.x - d.x, bdy = b.y - d.y, bdz = b.z - d.z;
  double cdx = c.x - d.x, cdy = c.y - d.y, cdz = c.z - d.z;

  double bdxcdy = bdx * cdy, bdycdx = bdy * cdx;
  double cdxady = cdx * ady, cdyadx = cdy * adx;
  double adxbdy = adx * bdy, adybdx = ady * bdx;

  double det = adz * (bdxcdy - bdycdx) + bdz * (cdxady - cdyadx) + cdz * (adxbdy - adybdx);

  // Shewchuk's static filter for orient3d.
  double permanent = (std::abs(bdxcdy) + std::abs(bdycdx)) * std::abs(adz) +
                     (std::abs(cdxady) + std::abs(cdyadx)) * std::abs(bdz) +
                     (std::abs(adxbdy) + std::abs(adybdx)) * std::abs(cdz);
  const double errbound = 7.1e-16 * permanent;
  if (det > errbound) return 1;
  if (det < -errbound) return -1;
  if (permanent == 0.0) return 0;
  return orient3d_exact(a, b, c, d);
}

int orient2d(double ax, double ay, double bx, double by, double cx, double cy) {
  double detleft = (ax - cx) * (by - cy);
  double detright = (ay - cy) * (bx - cx);
  double det = detleft - detright;
  double detsum = std::abs(detleft) + std::abs(detright);
  const double errbound = 3.4e-16 * detsum;
  if (det > errbound) return 1;
  if (det < -errbound) return -1;
  if (detsum == 0.0) return 0;
  return orient2d_exact(ax, ay, bx, by, cx, cy);
}

long orient3d_exact_fallbacks() { return g_exact_calls.load(); }

}  // namespace plateau
