#include "svkit/linprog.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace svkit {
namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kCostEps = 1e-10;

// Tableau simplex over the columns [A | I]; the artificial block doubles as
// the phase-one basis. Columns with index >= n are barred from re-entering
// once phase one ends.
struct Tableau {
  Mat t;                  // m x (n_total + 1), last column is the rhs
  std::vector<int> basis; // basis[i] = column basic in row i
  int m, n, n_total;

  explicit Tableau(const Mat& A, const Vec& b) {
    m = static_cast<int>(A.rows());
    n = static_cast<int>(A.cols());
    n_total = n + m;
    t.resize(m, n_total + 1);
    t.block(0, 0, m, n) = A;
    t.block(0, n, m, m) = Mat::Identity(m, m);
    t.col(n_total) = b;
    for (int i = 0; i < m; ++i) {
      if (t(i, n_total) < 0.0) t.row(i) = -t.row(i);
      // keep the artificial column a +1 unit column
      t(i, n + i) = 1.0;
    }
    basis.resize(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;
  }

  void pivot(int row, int col) {
    t.row(row) /= t(row, col);
    for (int i = 0; i < m; ++i) {
      if (i == row) continue;
      double f = t(i, col);
      if (f != 0.0) t.row(i) -= f * t.row(row);
    }
    basis[row] = col;
  }

  // reduced costs for the given full cost vector (size n_total)
  Vec reduced_costs(const Vec& cost) const {
    Vec y = Vec::Zero(m);
    for (int i = 0; i < m; ++i) y[i] = cost[basis[i]];
    Vec rc(n_total);
    for (int j = 0; j < n_total; ++j) rc[j] = cost[j] - y.dot(t.col(j).head(m));
    return rc;
  }

  double objective(const Vec& cost) const {
    double z = 0.0;
    for (int i = 0; i < m; ++i) z += cost[basis[i]] * t(i, n_total);
    return z;
  }

  Vec primal() const {
    Vec x = Vec::Zero(n);
    for (int i = 0; i < m; ++i)
      if (basis[i] < n) x[basis[i]] = t(i, n_total);
    return x;
  }

  // Returns Optimal/Unbounded/IterLimit for min cost'x over the current
  // feasible tableau. allow_artificial limits the entering candidates.
  LpResult::Status run(const Vec& cost, int max_iter, bool allow_artificial) {
    int limit = allow_artificial ? n_total : n;
    int stall = 0;
    double last_obj = objective(cost);
    for (int iter = 0; iter < max_iter; ++iter) {
      Vec rc = reduced_costs(cost);
      int enter = -1;
      bool bland = stall > 2 * (m + 2);
      if (bland) {
        for (int j = 0; j < limit; ++j)
          if (rc[j] < -kCostEps) { enter = j; break; }
      } else {
        double best = -kCostEps;
        for (int j = 0; j < limit; ++j)
          if (rc[j] < best) { best = rc[j]; enter = j; }
      }
      if (enter < 0) return LpResult::Status::Optimal;

      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        double a = t(i, enter);
        if (a > kPivotEps) {
          double ratio = t(i, n_total) / a;
          if (ratio < best_ratio - 1e-15 ||
              (ratio < best_ratio + 1e-15 && (leave < 0 || basis[i] < basis[leave]))) {
            best_ratio = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return LpResult::Status::Unbounded;
      pivot(leave, enter);

      double obj = objective(cost);
      if (obj < last_obj - 1e-13) {
        stall = 0;
        last_obj = obj;
      } else {
        ++stall;
      }
    }
    return LpResult::Status::IterLimit;
  }

  // After phase one: pivot basic artificial variables out where possible.
  void expel_artificials() {
    for (int i = 0; i < m; ++i) {
      if (basis[i] < n) continue;
      for (int j = 0; j < n; ++j) {
        if (std::abs(t(i, j)) > 1e-9) {
          pivot(i, j);
          break;
        }
      }
    }
  }
};

}  // namespace

LpResult solve_lp(const Mat& A, const Vec& b, const Vec& c, int max_iter) {
  Tableau tab(A, b);
  Vec phase1 = Vec::Zero(tab.n_total);
  phase1.tail(tab.m).setOnes();

  LpResult res;
  auto st = tab.run(phase1, max_iter, true);
  if (st == LpResult::Status::IterLimit) {
    res.status = st;
    return res;
  }
  double infeas = tab.objective(phase1);
  if (infeas > 1e-8) {
    res.status = LpResult::Status::Infeasible;
    res.objective = infeas;
    return res;
  }
  tab.expel_artificials();

  Vec phase2 = Vec::Zero(tab.n_total);
  phase2.head(tab.n) = c;
  st = tab.run(phase2, max_iter, false);
  res.status = st;
  if (st == LpResult::Status::Optimal) {
    res.x = tab.primal();
    res.objective = tab.objective(phase2);
  }
  return res;
}

FeasResult solve_feasibility(const Mat& A, const Vec& b, double tol, int max_iter) {
  Tableau tab(A, b);
  Vec phase1 = Vec::Zero(tab.n_total);
  phase1.tail(tab.m).setOnes();

  FeasResult res;
  auto st = tab.run(phase1, max_iter, true);
  if (st == LpResult::Status::IterLimit) {
    res.feasible = false;
    res.residual = std::numeric_limits<double>::infinity();
    return res;
  }
  res.residual = tab.objective(phase1);
  res.feasible = res.residual <= tol;
  res.x = tab.primal();
  return res;
}

}  // namespace svkit
