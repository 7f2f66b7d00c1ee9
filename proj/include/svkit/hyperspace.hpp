#pragma once

#include <optional>
#include <span>

#include "svkit/geometry.hpp"

namespace svkit {

/// The selected metric segment of the hyperspace of convex compact sets:
/// lambda*A + (1-lambda)*B. Alias of minkowski_interp with the segment
/// orientation fixed (lambda = 1 gives A).
ConvexPolytope segment_point(const ConvexPolytope& A, const ConvexPolytope& B,
                             double lambda);

/// Residuals of the geodesic identities along the selected segment of (A, B):
/// endpoint distances (1-lambda)h and lambda*h, reparametrization distance
/// |lambda-mu| h, and, when a third set is supplied, the signed hyperbolicity
/// slack h(lam A + (1-lam)B, lam A + (1-lam)C) - (1-lam) h(B,C).
struct GeodesicCertificate {
  std::vector<double> lambdas;
  double h_ab = 0.0;
  double max_endpoint_residual = 0.0;
  double max_reparam_residual = 0.0;
  std::optional<double> max_hyperbolicity_violation;  // signed; <= tol passes

  bool pass(double tol = 1e-9) const {
    if (max_endpoint_residual > tol || max_reparam_residual > tol) return false;
    if (max_hyperbolicity_violation && *max_hyperbolicity_violation > tol) return false;
    return true;
  }
};

GeodesicCertificate certify_geodesic(const ConvexPolytope& A, const ConvexPolytope& B,
                                     std::span<const double> lambdas, Norm n,
                                     const ConvexPolytope* third = nullptr);

/// Point-set variant with pointwise blends (no convexification). This is the
/// regime where the segment construction fails to be geodesic.
GeodesicCertificate certify_geodesic(const CompactPointSet& A, const CompactPointSet& B,
                                     std::span<const double> lambdas, Norm n,
                                     const CompactPointSet* third = nullptr);

/// The two vertical vertex pairs in the square whose pointwise half-sum is
/// sqrt(2) away from A even though h(A,B) = 2: convex combinations of plain
/// compact sets are not geodesics.
struct Counterexample {
  CompactPointSet A;
  CompactPointSet B;
  CompactPointSet midpoint_set;
  double h_ab = 0.0;    // 2
  double h_mid_a = 0.0; // sqrt(2)
};
Counterexample compact_counterexample();

/// Constructive porosity data: K' = (vertex cloud of K) + {z} with
/// d(z,K) = (3/4) eps, so any convex set within (1/4) eps of K' would have to
/// contain a point near the midpoint of [z, P_K z], which sits (3/8) eps away
/// from K'. Witnesses that the convex sets form a porous family among
/// compact sets.
struct PorosityWitness {
  ConvexPolytope K;
  Vec z;
  CompactPointSet K_prime;
  double eps = 0.0;
  double alpha = 0.25;
  Vec midpoint;
  double midpoint_gap = 0.0;  // = (3/8) eps
  double h_K_Kprime = 0.0;    // = (3/4) eps
};

/// Requires K inside C (strictly smaller) and 0 < eps < sup_{x in C} d(x, K).
PorosityWitness porosity_witness(const ConvexPolytope& C, const ConvexPolytope& K,
                                 double eps, Norm n = Norm::Euclidean);

}  // namespace svkit
