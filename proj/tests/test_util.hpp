#pragma once

#include <vector>

#include "svkit/geometry.hpp"
#include "svkit/rng.hpp"

namespace svkit::testutil {

inline ConvexPolytope square(double r = 1.0) {
  Mat m(2, 4);
  m << r, -r, -r, r,
       r, r, -r, -r;
  return ConvexPolytope::hull(m);
}

inline Vec vec2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

inline Vec vec3(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}

inline ConvexPolytope random_polytope(int dim, int npts, Rng& rng, double scale = 1.0,
                                      const Vec* center = nullptr) {
  std::vector<Vec> pts;
  for (int i = 0; i < npts; ++i) {
    Vec p(dim);
    for (int j = 0; j < dim; ++j) p[j] = rng.uniform(-scale, scale);
    if (center) p += *center;
    pts.push_back(p);
  }
  return ConvexPolytope::hull(pts);
}

/// Brute-force projection check on a 2-d box grid around the target.
inline double grid_min_distance(const ConvexPolytope& target, const Vec& x, Norm n,
                                double step) {
  double lo0 = target.vertices().row(0).minCoeff();
  double hi0 = target.vertices().row(0).maxCoeff();
  double lo1 = target.vertices().row(1).minCoeff();
  double hi1 = target.vertices().row(1).maxCoeff();
  double best = std::numeric_limits<double>::infinity();
  for (double a = lo0; a <= hi0 + step / 2; a += step)
    for (double b = lo1; b <= hi1 + step / 2; b += step) {
      Vec p = vec2(a, b);
      if (!contains(target, p, 1e-9)) continue;
      best = std::min(best, norm_of(x - p, n));
    }
  return best;
}

/// Dense boundary sampling of a polygon (for hausdorff cross-checks).
inline std::vector<Vec> dense_boundary(const ConvexPolytope& poly, int per_edge) {
  std::vector<Vec> out;
  int m = poly.count();
  for (int i = 0; i < m; ++i) {
    Vec a = poly.vertex(i), b = poly.vertex((i + 1) % m);
    for (int k = 0; k < per_edge; ++k)
      out.push_back(a + (b - a) * (static_cast<double>(k) / per_edge));
  }
  return out;
}

}  // namespace svkit::testutil
