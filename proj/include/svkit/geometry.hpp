#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "svkit/errors.hpp"
#include "svkit/norms.hpp"

namespace svkit {

// Tolerance conventions used throughout:
//   kHullTol    - containment / hull-equality decisions,
//   kReduceTol  - redundancy threshold when extracting extreme points,
//   kSupportTol - tie breaking when listing an exposed face.
inline constexpr double kHullTol = 1e-9;
inline constexpr double kReduceTol = 1e-12;
inline constexpr double kSupportTol = 1e-9;
inline constexpr double kDefaultProjTol = 1e-10;
inline constexpr int kDefaultIterCap = 100000;

/// Convex compact set given by an irredundant list of extreme points
/// (columns of a d x n matrix). In the plane the list is kept in
/// counterclockwise order starting from the lexicographically smallest
/// vertex; the 2-d fast paths rely on that ordering. Degenerate
/// (lower-dimensional) sets such as segments and singletons are legal.
class ConvexPolytope {
 public:
  /// Empty placeholder; every operation requires a set built through hull().
  ConvexPolytope() = default;

  static ConvexPolytope hull(const Mat& points);
  static ConvexPolytope hull(const std::vector<Vec>& points);
  static ConvexPolytope singleton(const Vec& p);

  int dim() const { return static_cast<int>(v_.rows()); }
  int count() const { return static_cast<int>(v_.cols()); }
  const Mat& vertices() const { return v_; }
  Vec vertex(int i) const { return v_.col(i); }

  /// Translation preserves extremality and ordering, so no reduction is run.
  ConvexPolytope translated(const Vec& offset) const;
  /// Same for scaling about a point by a positive factor.
  ConvexPolytope scaled_about(const Vec& center, double factor) const;

 private:
  explicit ConvexPolytope(Mat v) : v_(std::move(v)) {}
  Mat v_;
  friend ConvexPolytope polytope_from_columns_trusted(Mat v);
};

// Internal: wrap an already-irredundant, already-ordered column matrix.
ConvexPolytope polytope_from_columns_trusted(Mat v);

/// Finite set of points, kept as given (not convexified). Used for the
/// non-convex compact sets of the hyperspace counterexample and the porosity
/// witness.
class CompactPointSet {
 public:
  CompactPointSet() = default;

  static CompactPointSet of(const Mat& points);
  static CompactPointSet of(const std::vector<Vec>& points);

  int dim() const { return static_cast<int>(p_.rows()); }
  int count() const { return static_cast<int>(p_.cols()); }
  const Mat& points() const { return p_; }
  Vec point(int i) const { return p_.col(i); }

 private:
  explicit CompactPointSet(Mat p) : p_(std::move(p)) {}
  Mat p_;
};

using CompactSet = std::variant<ConvexPolytope, CompactPointSet>;

/// One metric-projection query: the distance value, one minimizer, and an
/// inner approximation of the optimal face together with its diameter.
/// Under the Euclidean norm the face of a convex target is a singleton; under
/// l1/linf it is recovered by probing the optimal set of the epigraph LP with
/// auxiliary objectives, so face_diameter is a stabilized lower bound.
struct ProjectionFace {
  Vec witness;
  double value = 0.0;
  double face_diameter = 0.0;
  std::vector<Vec> face_samples;
};

/// Extreme points of conv(points): drops every point expressible as a convex
/// combination of the others. Monotone chain in the plane, per-point LP
/// feasibility otherwise.
ConvexPolytope hull_reduce(const std::vector<Vec>& points);
ConvexPolytope hull_reduce(const Mat& points);

bool contains(const ConvexPolytope& P, const Vec& x, double tol = kHullTol);
bool hull_contains(const ConvexPolytope& outer, const ConvexPolytope& inner,
                   double tol = kHullTol);
bool hull_equal(const ConvexPolytope& a, const ConvexPolytope& b,
                double tol = kHullTol);

/// d(x, target) without face recovery (cheaper than project_point).
double distance_to(const ConvexPolytope& target, const Vec& x, Norm n);
double distance_to(const CompactPointSet& target, const Vec& x, Norm n);
double distance_to(const CompactSet& target, const Vec& x, Norm n);

/// Metric projection of x onto a polytope. Euclidean: Frank-Wolfe with away
/// steps on the simplex-parametrized least-squares problem, finished by an
/// active-face polish, to duality gap <= tol. l1/linf: epigraph LP, then the
/// optimal face is probed with 2d+4 or more linear objectives (coordinate
/// directions plus seeded random ones) at the fixed optimal value.
ProjectionFace project_point(const ConvexPolytope& target, const Vec& x, Norm n,
                             double tol = kDefaultProjTol,
                             int iter_cap = kDefaultIterCap,
                             std::uint64_t probe_seed = 0);

/// Hausdorff distance. Polytope suprema are evaluated over vertex lists
/// (exact for convex targets since d(.,B) is convex); point sets are looped
/// point by point.
double hausdorff(const ConvexPolytope& A, const ConvexPolytope& B, Norm n);
double hausdorff(const CompactPointSet& A, const CompactPointSet& B, Norm n);
double hausdorff(const ConvexPolytope& A, const CompactPointSet& B, Norm n);
double hausdorff(const CompactPointSet& A, const ConvexPolytope& B, Norm n);
double hausdorff(const CompactSet& A, const CompactSet& B, Norm n);

/// lambda*A + (1-lambda)*B as a polytope (weight lambda on A). Uses the
/// O(m+n) edge merge for full-dimensional polygons, all vertex pairs plus
/// reduction otherwise.
ConvexPolytope minkowski_interp(const ConvexPolytope& A, const ConvexPolytope& B,
                                double lambda);

/// Pointwise blend of finite sets: {lambda*a + (1-lambda)*b}. Deliberately
/// not convexified.
CompactPointSet pointwise_interp(const CompactPointSet& A, const CompactPointSet& B,
                                 double lambda);

double diameter(const ConvexPolytope& A, Norm n);
double diameter(const CompactPointSet& A, Norm n);
double diameter(const CompactSet& A, Norm n);

/// Support value max <u,v> over vertices plus every vertex attaining it
/// within tol (the exposed face's vertex set).
struct SupportFace {
  double value = 0.0;
  std::vector<int> argmax;
};
SupportFace support(const ConvexPolytope& A, const Vec& u, double tol = kSupportTol);

/// Exact distance from x to the segment [p, q] in the given norm.
double distance_point_segment(const Vec& x, const Vec& p, const Vec& q, Norm n,
                              Vec* closest = nullptr);

/// Largest t >= 0 with t*u inside P; requires 0 in the interior of P.
double ray_length(const ConvexPolytope& P, const Vec& u);

bool full_dimensional(const ConvexPolytope& P, double tol = 1e-9);

/// Radius of the largest coordinate cross-polytope around x inside P
/// (0 when x is not interior). Halving probe, LP membership per step.
double interior_margin(const ConvexPolytope& P, const Vec& x);

/// A point well inside P: maximizes the smallest axis margin via one LP,
/// falling back to the vertex centroid. P must be full-dimensional for the
/// result to be interior.
Vec deep_interior_point(const ConvexPolytope& P);

}  // namespace svkit
