#include "svkit/hyperspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace svkit {

ConvexPolytope segment_point(const ConvexPolytope& A, const ConvexPolytope& B,
                             double lambda) {
  return minkowski_interp(A, B, lambda);
}

namespace {

// shared residual computation over any set kind with a blend rule
template <typename Set, typename Blend>
GeodesicCertificate certify_impl(const Set& A, const Set& B,
                                 std::span<const double> lambdas, Norm n,
                                 const Set* third, Blend blend) {
  GeodesicCertificate cert;
  cert.lambdas.assign(lambdas.begin(), lambdas.end());
  for (double l : cert.lambdas)
    if (!(l >= 0.0 && l <= 1.0))
      throw std::invalid_argument("certify_geodesic: lambda out of [0,1]");
  cert.h_ab = hausdorff(A, B, n);

  std::vector<Set> seg;
  seg.reserve(cert.lambdas.size());
  for (double l : cert.lambdas) seg.push_back(blend(A, B, l));

  for (std::size_t i = 0; i < seg.size(); ++i) {
    double l = cert.lambdas[i];
    double r1 = std::abs(hausdorff(A, seg[i], n) - (1.0 - l) * cert.h_ab);
    double r2 = std::abs(hausdorff(B, seg[i], n) - l * cert.h_ab);
    cert.max_endpoint_residual = std::max({cert.max_endpoint_residual, r1, r2});
    for (std::size_t j = i + 1; j < seg.size(); ++j) {
      double m = cert.lambdas[j];
      double r = std::abs(hausdorff(seg[i], seg[j], n) - std::abs(l - m) * cert.h_ab);
      cert.max_reparam_residual = std::max(cert.max_reparam_residual, r);
    }
  }

  if (third) {
    double hbc = hausdorff(B, *third, n);
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < seg.size(); ++i) {
      double l = cert.lambdas[i];
      Set sc = blend(A, *third, l);
      double slack = hausdorff(seg[i], sc, n) - (1.0 - l) * hbc;
      worst = std::max(worst, slack);
    }
    cert.max_hyperbolicity_violation = worst;
  }
  return cert;
}

}  // namespace

GeodesicCertificate certify_geodesic(const ConvexPolytope& A, const ConvexPolytope& B,
                                     std::span<const double> lambdas, Norm n,
                                     const ConvexPolytope* third) {
  return certify_impl(A, B, lambdas, n, third,
                      [](const ConvexPolytope& a, const ConvexPolytope& b, double l) {
                        return minkowski_interp(a, b, l);
                      });
}

GeodesicCertificate certify_geodesic(const CompactPointSet& A, const CompactPointSet& B,
                                     std::span<const double> lambdas, Norm n,
                                     const CompactPointSet* third) {
  return certify_impl(A, B, lambdas, n, third,
                      [](const CompactPointSet& a, const CompactPointSet& b, double l) {
                        return pointwise_interp(a, b, l);
                      });
}

Counterexample compact_counterexample() {
  auto v = [](double x, double y) {
    Vec p(2);
    p << x, y;
    return p;
  };
  Counterexample ce;
  ce.A = CompactPointSet::of(std::vector<Vec>{v(-1, -1), v(-1, 1)});
  ce.B = CompactPointSet::of(std::vector<Vec>{v(1, -1), v(1, 1)});
  ce.midpoint_set = pointwise_interp(ce.A, ce.B, 0.5);
  ce.h_ab = hausdorff(ce.A, ce.B, Norm::Euclidean);
  ce.h_mid_a = hausdorff(ce.midpoint_set, ce.A, Norm::Euclidean);
  return ce;
}

PorosityWitness porosity_witness(const ConvexPolytope& C, const ConvexPolytope& K,
                                 double eps, Norm n) {
  if (!hull_contains(C, K, kHullTol))
    throw std::invalid_argument("porosity_witness: K is not contained in C");
  if (hull_equal(C, K, kHullTol))
    throw std::invalid_argument(
        "porosity_witness: K equals C; the carving branch is not represented");

  // eps0 = sup_{x in C} d(x, K); d(., K) is convex so the sup sits at a vertex
  double eps0 = 0.0;
  int far_idx = 0;
  for (int i = 0; i < C.count(); ++i) {
    double d = distance_to(K, C.vertex(i), n);
    if (d > eps0) {
      eps0 = d;
      far_idx = i;
    }
  }
  if (!(eps > 0.0 && eps < eps0))
    throw std::invalid_argument("porosity_witness: eps must lie in (0, sup d(x,K))");

  // d(., K) is convex and vanishes at the projection, hence non-increasing
  // along the segment from the far vertex to its projection: bisect for the
  // level (3/4) eps.
  Vec far = C.vertex(far_idx);
  Vec proj = project_point(K, far, n).witness;
  double target = 0.75 * eps;
  double lo = 0.0, hi = 1.0;  // g(0) = eps0 > target, g(1) = 0
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double g = distance_to(K, Vec(far + mid * (proj - far)), n);
    if (g > target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-16) break;
  }
  Vec z = far + 0.5 * (lo + hi) * (proj - far);

  PorosityWitness w;
  w.K = K;
  w.z = z;
  w.eps = eps;
  std::vector<Vec> cloud;
  for (int i = 0; i < K.count(); ++i) cloud.push_back(K.vertex(i));
  cloud.push_back(z);
  w.K_prime = CompactPointSet::of(cloud);
  w.h_K_Kprime = hausdorff(w.K, w.K_prime, n);
  Vec pz = project_point(K, z, n).witness;
  w.midpoint = 0.5 * (z + pz);
  w.midpoint_gap = distance_to(w.K_prime, w.midpoint, n);
  return w;
}

}  // namespace svkit
