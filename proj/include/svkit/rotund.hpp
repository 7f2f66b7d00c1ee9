#pragma once

#include <cstdint>
#include <span>

#include "svkit/geometry.hpp"

namespace svkit {

/// Rotund convex body obtained from a polytope by the radial map
/// T(x) = x / (1 + a|x|_2) after translating an interior point to the origin.
/// Every supporting hyperplane meets the image in a single point, so metric
/// projections onto it are unique in any norm.
///
/// Dual representation: membership is exact through the inverse radial
/// formula (x is in the body iff a|x| < 1 and x/(1 - a|x|) lies in the base
/// polytope), and a polytopal inner approximation built from a boundary mesh
/// supports fast projection queries. h(approx, body) <= approx_tol, estimated
/// by boundary sampling and valid for all three norms.
class RotundSet {
 public:
  RotundSet() = default;
  RotundSet(ConvexPolytope base, Vec shift, double a, double eps,
            ConvexPolytope approx, double approx_tol, int subdiv)
      : base_(std::move(base)), shift_(std::move(shift)), a_(a), eps_(eps),
        approx_(std::move(approx)), approx_tol_(approx_tol), subdiv_(subdiv) {}

  const ConvexPolytope& base() const { return base_; }
  const Vec& shift() const { return shift_; }
  double radial_a() const { return a_; }
  double shrink_eps() const { return eps_; }
  const ConvexPolytope& approx() const { return approx_; }
  double approx_tol() const { return approx_tol_; }
  int subdiv() const { return subdiv_; }
  int dim() const { return base_.dim(); }

  /// Forward radial map in ambient coordinates.
  Vec map(const Vec& ambient_base_point) const;

 private:
  ConvexPolytope base_;  // translated so 0 is interior
  Vec shift_;            // ambient = base + shift
  double a_ = 0.0;
  double eps_ = 0.0;
  ConvexPolytope approx_;
  double approx_tol_ = 0.0;
  int subdiv_ = 0;
};

enum class Membership { Inside, Boundary, Outside };

/// Klee's rotundification: translates C so interior_point is the origin, sets
/// a = eps / (2 (1-eps) sup |z|_2) and takes the radial image. The result K
/// satisfies (1-eps) C inside K inside C; both containments are verified on
/// the vertices at construction. C must be full-dimensional.
RotundSet klee_map(const ConvexPolytope& C, double eps, const Vec& interior_point,
                   int approx_subdiv);

/// Exact membership classification through the inverse radial formula, with a
/// boundary band of width tol measured along the ray through x.
Membership rotund_membership(const RotundSet& K, const Vec& x, double tol = 1e-9);

/// Metric projection onto the rotund body: project onto the inner
/// approximation first, then refine by local minimization of |x - T(c)| over
/// the base (projected gradient over the simplex parametrization with step
/// halving; in the plane an additional golden-section polish along the
/// boundary). The face fields report the approximation's optimal face; the
/// witness and value are the refined ones. `seed` jitters the refinement
/// start; distinct seeds must agree for truly rotund targets.
ProjectionFace project_rotund(const RotundSet& K, const Vec& x, Norm n,
                              double tol = 1e-8, std::uint64_t seed = 0);

/// Samples support directions and measures the diameter of each exposed face
/// (argmax set of the support function). pass = every observed face diameter
/// is below 1/n. For a RotundSet the candidates from the boundary mesh are
/// refined locally before measuring. Diameters are Euclidean.
struct RotundityProbe {
  double max_face_diam = 0.0;
  bool pass = false;
};
RotundityProbe rotundity_probe(const ConvexPolytope& P, int directions,
                               std::uint64_t seed, int n);
RotundityProbe rotundity_probe(const RotundSet& K, int directions,
                               std::uint64_t seed, int n);

/// Rotund body within Hausdorff distance eps of C: Klee map about a deep
/// interior point with shrink factor eps' = min(eps / (2 diam C), eps), which
/// gives h(K, C) <= eps' sup|z|_2 < eps. Errors on degenerate
/// (lower-dimensional) input. approx_subdiv = 0 picks the default for the
/// dimension (32 in the plane, 8 beyond).
RotundSet rotundify(const ConvexPolytope& C, double eps, int approx_subdiv = 0);

/// As rotundify, but the radial center slides from a deep interior point
/// toward z and the shrink factor halves until z survives in the image
/// (membership Inside or Boundary). Requires z in C.
RotundSet point_anchored_rotundify(const ConvexPolytope& C, double eps, const Vec& z,
                                   int approx_subdiv = 0);

/// max over the tail half of |z_k - P_{C_limit} x_limit| where z_k is any
/// selection from the projection of x_k onto C_k. Requires h(C_k, approx)
/// non-increasing along the sequence.
double projection_stability(std::span<const ConvexPolytope> C_seq,
                            const RotundSet& C_limit, std::span<const Vec> x_seq,
                            const Vec& x_limit, Norm n);

/// Halving search for a sampled stability radius: accepts delta once all
/// drawn convex sets K with h(K, C) < delta and points y with |x-y| < delta
/// satisfy h(P~_K y, {P_C x}) < eps and diam P~_K y <= 1/n. An empirical
/// certificate, not a proof. Throws DeltaUnderflow below 1e-12.
double stability_delta_search(const RotundSet& C, const Vec& x, double eps, int n,
                              Norm norm, int samples, std::uint64_t seed,
                              double delta_start = -1.0);

}  // namespace svkit
