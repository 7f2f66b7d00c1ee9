#pragma once

#include "svkit/norms.hpp"

namespace svkit {

/// Result of a dense simplex solve.
struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded, IterLimit };
  Status status = Status::IterLimit;
  Vec x;                  // primal solution when Optimal
  double objective = 0.0;
};

/// Solve  min c'x  s.t.  A x = b,  x >= 0  with a dense two-phase simplex
/// (Dantzig pricing, Bland fallback against stalling). Sized for the small
/// instances this library produces: tens of rows, up to a few thousand
/// columns.
LpResult solve_lp(const Mat& A, const Vec& b, const Vec& c, int max_iter = 50000);

/// Phase-one only: is {x >= 0 : A x = b} nonempty?  `residual` is the
/// attained artificial objective (an l1-style infeasibility measure).
struct FeasResult {
  bool feasible = false;
  Vec x;
  double residual = 0.0;
};
FeasResult solve_feasibility(const Mat& A, const Vec& b, double tol, int max_iter = 50000);

}  // namespace svkit
