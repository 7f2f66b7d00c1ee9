#pragma once

#include <cstdint>
#include <memory>
#include <span>

#include "svkit/geometry.hpp"
#include "svkit/rng.hpp"

namespace svkit {

/// Lipschitz scalar weight field on the domain with range [0,1]. Two
/// closed-form families: a constant, and the conical bump
/// x -> max{1 - |x - center| / radius, 0} whose Lipschitz constant is
/// 1/radius in the same norm.
class ScalarField {
 public:
  static ScalarField constant(double value);
  static ScalarField bump(Vec center, double radius, Norm n);

  double operator()(const Vec& x) const;
  double lip_bound() const { return lip_; }
  bool is_constant() const { return kind_ == Kind::Constant; }
  double constant_value() const { return value_; }
  const Vec& bump_center() const { return center_; }
  double bump_radius() const { return radius_; }
  Norm bump_norm() const { return norm_; }

 private:
  enum class Kind { Constant, Bump };
  Kind kind_ = Kind::Constant;
  double value_ = 0.0;
  Vec center_;
  double radius_ = 1.0;
  Norm norm_ = Norm::Euclidean;
  double lip_ = 0.0;
};

/// Radial cutoff that fixes the ball of radius r pointwise to the origin and
/// is the identity beyond radius R; in between it pushes points outward along
/// their ray. Lipschitz with constant at most 1 + r/(R-r) and |phi(x)-x| <= r
/// everywhere.
Vec bump_phi(const Vec& x, double r, double R, Norm n = Norm::Euclidean);

/// Set-valued mapping F: C -> (convex compact subsets of C) with declared
/// Lipschitz metadata. Values are produced by closed-form, serializable
/// construction trees:
///   Constant        x -> K
///   AffinePolytope  x -> hull{M x + v_i}   (lip = operator norm of M)
///   ConvexBlend     x -> w(x) A + (1-w(x)) base(x)
///   PointPerturbed  x -> lam(x) K + (1-lam(x)) base(xi + phi(x-xi))
/// Immutable and cheap to copy; evaluation is pure.
class SetValuedMap {
 public:
  enum class Kind { AffinePolytope, ConvexBlend, PointPerturbed, Constant, Composite };

  SetValuedMap() = default;

  static SetValuedMap constant(ConvexPolytope domain, Norm n, ConvexPolytope value);
  /// certify_range runs the exact affine-image containment check
  /// (M u + v in domain for all domain and offset vertices).
  static SetValuedMap affine(ConvexPolytope domain, Norm n, Mat M,
                             ConvexPolytope offsets, bool certify_range = true);

  const ConvexPolytope& domain() const;
  Norm norm() const;
  double lip_bound() const;
  /// Root node type; Composite when closed-form nodes are nested more than
  /// one level deep.
  Kind kind() const;

  ConvexPolytope eval(const Vec& x) const;

  // construction-tree introspection (serialization support)
  struct Node;
  const std::shared_ptr<const Node>& node() const { return node_; }
  explicit SetValuedMap(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

 private:
  std::shared_ptr<const Node> node_;
};

/// Estimate of d_inf(F,G) = sup_x h(F(x),G(x)): the maximum over the sample
/// points refined by a local coordinate search around the best sample. Both
/// the sample maximum and the refined value are certified lower bounds of the
/// true supremum.
double d_infinity(const SetValuedMap& F, const SetValuedMap& G,
                  std::span<const Vec> sample_points, bool refine = true);

/// (1-gamma) G(x) + gamma A: a strict contraction whenever gamma > 0, with
/// lip = (1-gamma) lip G and d_inf(F, G) <= gamma diam(domain).
SetValuedMap densify_contraction(const SetValuedMap& G, double gamma,
                                 const ConvexPolytope& A);

/// w(x) A + (1-w(x)) F(x) with declared lip = lip F + lip w * max_y h(A,F(y))
/// (the maximum sampled over the domain with a fixed internal seed).
SetValuedMap convex_blend(const SetValuedMap& F, const ConvexPolytope& A,
                          const ScalarField& weight);

/// Reanchor F at xi: the result G satisfies G(xi) = K exactly, G = F outside
/// B(xi, R), h(F(x),G(x)) <= 2r everywhere, and
/// lip G <= max{R/(R-r) lip F, lip F + rho/r}. Requires 0 < rho < r < R,
/// h(K, F(xi)) < rho and K inside the domain.
SetValuedMap perturb_at_point(const SetValuedMap& F, const Vec& xi,
                              const ConvexPolytope& K, double rho, double r, double R);

/// Sampled lower bound of the Lipschitz constant: max of
/// h(F(x),F(y)) / |x-y| over random pairs, optionally refined by coordinate
/// ascent around the best pair.
double estimate_lip(const SetValuedMap& F, int pairs, std::uint64_t seed,
                    bool refine = true);

/// Random point of a polytope (flat weights over the vertices).
Vec sample_in_polytope(const ConvexPolytope& P, Rng& rng);

/// Deterministic batch of sample points for d_infinity and friends.
std::vector<Vec> sample_domain_points(const ConvexPolytope& domain, int count,
                                      std::uint64_t seed);

}  // namespace svkit
