#include "svkit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "svkit/linprog.hpp"
#include "svkit/rng.hpp"

namespace svkit {

// ---------------------------------------------------------------------------
// norms

double norm_of(const Vec& v, Norm n) {
  switch (n) {
    case Norm::Euclidean: return v.norm();
    case Norm::L1: return v.lpNorm<1>();
    case Norm::Linf: return v.lpNorm<Eigen::Infinity>();
  }
  return 0.0;
}

double operator_norm(const Mat& M, Norm n) {
  switch (n) {
    case Norm::Euclidean: {
      Eigen::JacobiSVD<Mat> svd(M);
      return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    }
    case Norm::L1: {
      double best = 0.0;
      for (int j = 0; j < M.cols(); ++j) best = std::max(best, M.col(j).lpNorm<1>());
      return best;
    }
    case Norm::Linf: {
      double best = 0.0;
      for (int i = 0; i < M.rows(); ++i) best = std::max(best, M.row(i).lpNorm<1>());
      return best;
    }
  }
  return 0.0;
}

std::string to_string(Norm n) {
  switch (n) {
    case Norm::Euclidean: return "l2";
    case Norm::L1: return "l1";
    case Norm::Linf: return "linf";
  }
  return "l2";
}

Norm norm_from_string(std::string_view s) {
  if (s == "l2" || s == "euclidean") return Norm::Euclidean;
  if (s == "l1") return Norm::L1;
  if (s == "linf") return Norm::Linf;
  throw std::invalid_argument("unknown norm: " + std::string(s));
}

// ---------------------------------------------------------------------------
// construction helpers

namespace {

void require_same_dim(int a, int b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string("dimension mismatch in ") + what);
}

double cross2(const Vec& o, const Vec& a, const Vec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// relative collinearity threshold for the turn at o
double cross_eps(const Vec& o, const Vec& a, const Vec& b) {
  double la = std::max(std::abs(a[0] - o[0]), std::abs(a[1] - o[1]));
  double lb = std::max(std::abs(b[0] - o[0]), std::abs(b[1] - o[1]));
  return 1e-12 * std::max(la * lb, 1e-300);
}

std::vector<Vec> columns_of(const Mat& m) {
  std::vector<Vec> v;
  v.reserve(m.cols());
  for (int i = 0; i < m.cols(); ++i) v.push_back(m.col(i));
  return v;
}

Mat matrix_of(const std::vector<Vec>& pts) {
  Mat m(pts.empty() ? 0 : pts.front().size(), static_cast<int>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) m.col(static_cast<int>(i)) = pts[i];
  return m;
}

bool lex_less(const Vec& a, const Vec& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

// lexicographic sort + adjacent dedup (absolute-ish tolerance)
std::vector<Vec> sorted_dedup(std::vector<Vec> pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  std::vector<Vec> out;
  for (auto& p : pts) {
    if (!out.empty()) {
      double tol = 1e-12 * (1.0 + out.back().lpNorm<Eigen::Infinity>());
      if ((p - out.back()).lpNorm<Eigen::Infinity>() <= tol) continue;
    }
    out.push_back(p);
  }
  return out;
}

std::vector<Vec> chain_hull_2d(std::vector<Vec> pts) {
  pts = sorted_dedup(std::move(pts));
  std::size_t n = pts.size();
  if (n <= 2) return pts;
  std::vector<Vec> h(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower
    while (k >= 2 && cross2(h[k - 2], h[k - 1], pts[i]) <=
                         cross_eps(h[k - 2], h[k - 1], pts[i]))
      --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper
    while (k >= t && cross2(h[k - 2], h[k - 1], pts[i]) <=
                         cross_eps(h[k - 2], h[k - 1], pts[i]))
      --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);  // last point repeats the first
  return h;
}

// membership LP: x in conv(columns of V)?
FeasResult membership_lp(const Mat& V, const Vec& x, double tol) {
  int d = static_cast<int>(V.rows());
  int n = static_cast<int>(V.cols());
  Mat A(d + 1, n);
  A.topRows(d) = V;
  A.row(d).setOnes();
  Vec b(d + 1);
  b.head(d) = x;
  b[d] = 1.0;
  return solve_feasibility(A, b, tol);
}

std::vector<Vec> lp_hull(std::vector<Vec> pts) {
  pts = sorted_dedup(std::move(pts));
  std::size_t n = pts.size();
  if (n <= 1) return pts;
  std::vector<bool> keep(n, true);
  std::size_t kept = n;
  int d = static_cast<int>(pts.front().size());
  for (std::size_t i = 0; i < n; ++i) {
    if (kept <= 1) break;
    Mat V(d, static_cast<int>(kept - 1));
    int c = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (keep[j] && j != i) V.col(c++) = pts[j];
    double tol = kReduceTol * (1.0 + pts[i].lpNorm<1>());
    if (membership_lp(V, pts[i], tol).feasible) {
      keep[i] = false;
      --kept;
    }
  }
  std::vector<Vec> out;
  for (std::size_t i = 0; i < n; ++i)
    if (keep[i]) out.push_back(pts[i]);
  return out;
}

}  // namespace

ConvexPolytope polytope_from_columns_trusted(Mat v) {
  return ConvexPolytope(std::move(v));
}

ConvexPolytope ConvexPolytope::hull(const Mat& points) {
  return hull(columns_of(points));
}

ConvexPolytope ConvexPolytope::hull(const std::vector<Vec>& points) {
  if (points.empty()) throw std::invalid_argument("hull of an empty point set");
  int d = static_cast<int>(points.front().size());
  for (const auto& p : points) {
    if (p.size() != d) throw std::invalid_argument("hull: mixed point dimensions");
    if (!p.allFinite()) throw std::invalid_argument("hull: non-finite coordinates");
  }
  std::vector<Vec> ext;
  if (d == 1) {
    Vec lo = points.front(), hi = points.front();
    for (const auto& p : points) {
      if (p[0] < lo[0]) lo = p;
      if (p[0] > hi[0]) hi = p;
    }
    ext.push_back(lo);
    if (hi[0] - lo[0] > 1e-12 * (1.0 + std::abs(lo[0]))) ext.push_back(hi);
  } else if (d == 2) {
    ext = chain_hull_2d(points);
  } else {
    ext = lp_hull(points);
  }
  return ConvexPolytope(matrix_of(ext));
}

ConvexPolytope ConvexPolytope::singleton(const Vec& p) {
  Mat m(p.size(), 1);
  m.col(0) = p;
  return ConvexPolytope(std::move(m));
}

ConvexPolytope ConvexPolytope::translated(const Vec& offset) const {
  require_same_dim(dim(), static_cast<int>(offset.size()), "translated");
  Mat m = v_.colwise() + offset;
  return ConvexPolytope(std::move(m));
}

ConvexPolytope ConvexPolytope::scaled_about(const Vec& center, double factor) const {
  require_same_dim(dim(), static_cast<int>(center.size()), "scaled_about");
  if (factor <= 0.0) {
    if (factor < 0.0) throw std::invalid_argument("scaled_about: negative factor");
    return singleton(center);
  }
  Mat m = ((v_.colwise() - center) * factor).colwise() + center;
  return ConvexPolytope(std::move(m));
}

ConvexPolytope hull_reduce(const std::vector<Vec>& points) {
  return ConvexPolytope::hull(points);
}

ConvexPolytope hull_reduce(const Mat& points) {
  return ConvexPolytope::hull(points);
}

CompactPointSet CompactPointSet::of(const Mat& points) {
  return of(columns_of(points));
}

CompactPointSet CompactPointSet::of(const std::vector<Vec>& points) {
  if (points.empty()) throw std::invalid_argument("empty point set");
  int d = static_cast<int>(points.front().size());
  for (const auto& p : points)
    if (p.size() != d) throw std::invalid_argument("point set: mixed dimensions");
  auto u = sorted_dedup(points);
  return CompactPointSet(matrix_of(u));
}

// ---------------------------------------------------------------------------
// containment

bool contains(const ConvexPolytope& P, const Vec& x, double tol) {
  require_same_dim(P.dim(), static_cast<int>(x.size()), "contains");
  if (P.count() == 1) return (P.vertex(0) - x).lpNorm<Eigen::Infinity>() <= tol;
  return membership_lp(P.vertices(), x, tol).feasible;
}

bool hull_contains(const ConvexPolytope& outer, const ConvexPolytope& inner, double tol) {
  for (int i = 0; i < inner.count(); ++i)
    if (!contains(outer, inner.vertex(i), tol)) return false;
  return true;
}

bool hull_equal(const ConvexPolytope& a, const ConvexPolytope& b, double tol) {
  return hull_contains(a, b, tol) && hull_contains(b, a, tol);
}

// ---------------------------------------------------------------------------
// segment / polygon distances

double distance_point_segment(const Vec& x, const Vec& p, const Vec& q, Norm n,
                              Vec* closest) {
  Vec a = x - p;
  Vec d = q - p;
  double dd = d.squaredNorm();
  auto eval = [&](double t) { return norm_of(a - t * d, n); };
  double best_t = 0.0;
  if (dd <= 1e-300) {
    best_t = 0.0;
  } else if (n == Norm::Euclidean) {
    best_t = std::clamp(a.dot(d) / dd, 0.0, 1.0);
  } else {
    // piecewise-linear convex in t: minimum at a breakpoint
    std::vector<double> cand{0.0, 1.0};
    int dim = static_cast<int>(x.size());
    for (int i = 0; i < dim; ++i)
      if (std::abs(d[i]) > 1e-300) cand.push_back(a[i] / d[i]);
    if (n == Norm::Linf) {
      for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) {
          double dm = d[i] - d[j], dp = d[i] + d[j];
          if (std::abs(dm) > 1e-300) cand.push_back((a[i] - a[j]) / dm);
          if (std::abs(dp) > 1e-300) cand.push_back((a[i] + a[j]) / dp);
        }
    }
    double best = std::numeric_limits<double>::infinity();
    for (double t : cand) {
      t = std::clamp(t, 0.0, 1.0);
      double v = eval(t);
      if (v < best) {
        best = v;
        best_t = t;
      }
    }
  }
  if (closest) *closest = p + best_t * d;
  return eval(best_t);
}

namespace {

bool point_in_polygon_ccw(const Mat& V, const Vec& x) {
  int n = static_cast<int>(V.cols());
  for (int i = 0; i < n; ++i) {
    Vec a = V.col(i), b = V.col((i + 1) % n);
    double c = (b[0] - a[0]) * (x[1] - a[1]) - (b[1] - a[1]) * (x[0] - a[0]);
    double eps = 1e-12 * std::max(1.0, (b - a).lpNorm<Eigen::Infinity>() *
                                           (x - a).lpNorm<Eigen::Infinity>());
    if (c < -eps) return false;
  }
  return true;
}

double polygon_distance(const ConvexPolytope& P, const Vec& x, Norm n, Vec* closest) {
  const Mat& V = P.vertices();
  int m = static_cast<int>(V.cols());
  if (m == 1) {
    if (closest) *closest = V.col(0);
    return norm_of(x - V.col(0), n);
  }
  if (m == 2) return distance_point_segment(x, V.col(0), V.col(1), n, closest);
  if (point_in_polygon_ccw(V, x)) {
    if (closest) *closest = x;
    return 0.0;
  }
  double best = std::numeric_limits<double>::infinity();
  Vec bc;
  for (int i = 0; i < m; ++i) {
    Vec c;
    double v = distance_point_segment(x, V.col(i), V.col((i + 1) % m), n, &c);
    if (v < best) {
      best = v;
      bc = c;
    }
  }
  if (closest) *closest = bc;
  return best;
}

// ---------------------------------------------------------------------------
// Euclidean projection QP: Frank-Wolfe with away steps + active-face polish

struct QpSolution {
  Vec lambda;
  Vec point;
  double value = 0.0;
  double gap = 0.0;
};

// exact least squares on the current active face; returns false if the face
// collapses
bool polish_active_face(const Mat& V, const Vec& x, Vec& lambda) {
  int n = static_cast<int>(V.cols());
  std::vector<int> S;
  for (int i = 0; i < n; ++i)
    if (lambda[i] > 1e-14) S.push_back(i);
  if (S.empty() || S.size() > 64) return false;
  for (std::size_t round = 0; round <= S.size() + 1 && !S.empty(); ++round) {
    int k = static_cast<int>(S.size());
    Mat VS(V.rows(), k);
    for (int i = 0; i < k; ++i) VS.col(i) = V.col(S[i]);
    Mat K(k + 1, k + 1);
    K.topLeftCorner(k, k) = VS.transpose() * VS;
    K.topRightCorner(k, 1).setOnes();
    K.bottomLeftCorner(1, k).setOnes();
    K(k, k) = 0.0;
    Vec rhs(k + 1);
    rhs.head(k) = VS.transpose() * x;
    rhs[k] = 1.0;
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(K);
    Vec sol = cod.solve(rhs);
    Vec mu = sol.head(k);
    int worst = -1;
    double worst_val = -1e-12;
    for (int i = 0; i < k; ++i)
      if (mu[i] < worst_val) {
        worst_val = mu[i];
        worst = i;
      }
    if (worst < 0) {
      Vec cand = Vec::Zero(n);
      double s = 0.0;
      for (int i = 0; i < k; ++i) {
        double w = std::max(mu[i], 0.0);
        cand[S[i]] = w;
        s += w;
      }
      if (s <= 1e-300) return false;
      cand /= s;
      double f_old = (V * lambda - x).squaredNorm();
      double f_new = (V * cand - x).squaredNorm();
      if (f_new <= f_old + 1e-15 * (1.0 + f_old)) {
        lambda = cand;
        return true;
      }
      return false;
    }
    S.erase(S.begin() + worst);
  }
  return false;
}

QpSolution project_qp(const Mat& V, const Vec& x, double tol, int iter_cap) {
  int n = static_cast<int>(V.cols());
  Vec lambda = Vec::Zero(n);
  {
    int best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      double d2 = (V.col(i) - x).squaredNorm();
      if (d2 < bd) {
        bd = d2;
        best = i;
      }
    }
    lambda[best] = 1.0;
  }
  auto fw_gap = [&](const Vec& lam, const Vec& g) {
    double lg = lam.dot(g);
    double gmin = g.minCoeff();
    return 2.0 * (lg - gmin);  // gap for f = |x - V lam|^2 (grad = 2 V^T r)
  };

  for (int iter = 0; iter < iter_cap; ++iter) {
    Vec y = V * lambda;
    Vec r = y - x;
    Vec g = V.transpose() * r;
    int s = 0;
    g.minCoeff(&s);
    double gap = fw_gap(lambda, g);
    bool try_polish = gap <= tol || (iter > 0 && iter % 128 == 0);
    if (try_polish) {
      if (polish_active_face(V, x, lambda)) {
        y = V * lambda;
        r = y - x;
        g = V.transpose() * r;
        g.minCoeff(&s);
        gap = fw_gap(lambda, g);
      }
      if (gap <= tol) {
        return {lambda, y, r.norm(), gap};
      }
    }
    // away vertex among the active set
    int a = -1;
    double ga = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
      if (lambda[i] > 1e-16 && g[i] > ga) {
        ga = g[i];
        a = i;
      }
    double fw_score = lambda.dot(g) - g[s];
    double away_score = (a >= 0) ? ga - lambda.dot(g) : -1.0;
    if (fw_score >= away_score || a < 0) {
      Vec dir = V.col(s) - y;
      double denom = dir.squaredNorm();
      if (denom <= 1e-300) return {lambda, y, r.norm(), gap};
      double step = std::clamp(-r.dot(dir) / denom, 0.0, 1.0);
      lambda *= (1.0 - step);
      lambda[s] += step;
    } else {
      Vec dir = y - V.col(a);
      double denom = dir.squaredNorm();
      if (denom <= 1e-300) return {lambda, y, r.norm(), gap};
      double max_step = lambda[a] / std::max(1.0 - lambda[a], 1e-16);
      double step = std::clamp(-r.dot(dir) / denom, 0.0, max_step);
      lambda *= (1.0 + step);
      lambda[a] -= step;
      if (lambda[a] < 1e-15) lambda[a] = 0.0;
    }
  }
  // final attempt before giving up
  if (polish_active_face(V, x, lambda)) {
    Vec y = V * lambda;
    Vec g = V.transpose() * (y - x);
    double gap = fw_gap(lambda, g);
    if (gap <= tol) return {lambda, y, (y - x).norm(), gap};
  }
  throw ConvergenceError("projection QP did not reach the duality-gap tolerance");
}

// ---------------------------------------------------------------------------
// l1 / linf projection LPs

struct EpigraphLp {
  Mat A;
  Vec b;
  Vec c;
  int n;       // vertex count
  int t_vars;  // d for l1, 1 for linf
};

EpigraphLp build_epigraph(const Mat& V, const Vec& x, Norm n) {
  int d = static_cast<int>(V.rows());
  int m = static_cast<int>(V.cols());
  int tv = (n == Norm::L1) ? d : 1;
  int cols = m + tv + 2 * d;
  int rows = 2 * d + 1;
  EpigraphLp lp;
  lp.n = m;
  lp.t_vars = tv;
  lp.A = Mat::Zero(rows, cols);
  lp.b = Vec::Zero(rows);
  lp.c = Vec::Zero(cols);
  for (int j = 0; j < d; ++j) {
    int tj = m + ((n == Norm::L1) ? j : 0);
    // t_j + sum_i lambda_i V_ji - s1_j = x_j
    lp.A.row(j).head(m) = V.row(j);
    lp.A(j, tj) = 1.0;
    lp.A(j, m + tv + j) = -1.0;
    lp.b[j] = x[j];
    // t_j - sum_i lambda_i V_ji - s2_j = -x_j
    lp.A.row(d + j).head(m) = -V.row(j);
    lp.A(d + j, tj) = 1.0;
    lp.A(d + j, m + tv + d + j) = -1.0;
    lp.b[d + j] = -x[j];
  }
  lp.A.row(2 * d).head(m).setOnes();
  lp.b[2 * d] = 1.0;
  for (int t = 0; t < tv; ++t) lp.c[m + t] = 1.0;
  return lp;
}

struct LpDistance {
  double value;
  Vec y;
};

LpDistance lp_distance(const Mat& V, const Vec& x, Norm n, int iter_cap) {
  EpigraphLp lp = build_epigraph(V, x, n);
  LpResult res = solve_lp(lp.A, lp.b, lp.c, iter_cap);
  if (res.status != LpResult::Status::Optimal)
    throw ConvergenceError("distance LP failed to converge");
  Vec lambda = res.x.head(lp.n);
  return {std::max(res.objective, 0.0), V * lambda};
}

// probe the optimal face at fixed distance budget with objective max <u, y>
Vec face_probe(const EpigraphLp& base, const Mat& V, double budget, const Vec& u,
               int iter_cap) {
  int rows = static_cast<int>(base.A.rows());
  int cols = static_cast<int>(base.A.cols());
  Mat A = Mat::Zero(rows + 1, cols + 1);
  A.topLeftCorner(rows, cols) = base.A;
  for (int t = 0; t < base.t_vars; ++t) A(rows, base.n + t) = 1.0;
  A(rows, cols) = 1.0;  // slack for the budget row
  Vec b(rows + 1);
  b.head(rows) = base.b;
  b[rows] = budget;
  Vec c = Vec::Zero(cols + 1);
  c.head(base.n) = -(V.transpose() * u);
  LpResult res = solve_lp(A, b, c, iter_cap);
  if (res.status != LpResult::Status::Optimal)
    throw ConvergenceError("face probe LP failed to converge");
  return V * res.x.head(base.n);
}

}  // namespace

// ---------------------------------------------------------------------------
// distances

double distance_to(const ConvexPolytope& target, const Vec& x, Norm n) {
  require_same_dim(target.dim(), static_cast<int>(x.size()), "distance_to");
  if (target.count() == 1) return norm_of(x - target.vertex(0), n);
  if (target.dim() == 2) return polygon_distance(target, x, n, nullptr);
  if (n == Norm::Euclidean)
    return project_qp(target.vertices(), x, kDefaultProjTol, kDefaultIterCap).value;
  return lp_distance(target.vertices(), x, n, kDefaultIterCap).value;
}

double distance_to(const CompactPointSet& target, const Vec& x, Norm n) {
  require_same_dim(target.dim(), static_cast<int>(x.size()), "distance_to");
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < target.count(); ++i)
    best = std::min(best, norm_of(x - target.point(i), n));
  return best;
}

double distance_to(const CompactSet& target, const Vec& x, Norm n) {
  return std::visit([&](const auto& t) { return distance_to(t, x, n); }, target);
}

ProjectionFace project_point(const ConvexPolytope& target, const Vec& x, Norm n,
                             double tol, int iter_cap, std::uint64_t probe_seed) {
  require_same_dim(target.dim(), static_cast<int>(x.size()), "project_point");
  if (tol <= 0.0) throw std::invalid_argument("project_point: tol must be positive");
  ProjectionFace out;
  if (target.count() == 1) {
    out.witness = target.vertex(0);
    out.value = norm_of(x - out.witness, n);
    out.face_samples = {out.witness};
    return out;
  }
  if (n == Norm::Euclidean) {
    if (target.dim() == 2) {
      Vec c;
      out.value = polygon_distance(target, x, n, &c);
      out.witness = c;
    } else {
      auto qp = project_qp(target.vertices(), x, tol, iter_cap);
      out.value = qp.value;
      out.witness = qp.point;
    }
    out.face_samples = {out.witness};
    return out;
  }

  // polyhedral norm: distance LP, then probe the optimal face
  const Mat& V = target.vertices();
  EpigraphLp lp = build_epigraph(V, x, n);
  LpResult res = solve_lp(lp.A, lp.b, lp.c, iter_cap);
  if (res.status != LpResult::Status::Optimal)
    throw ConvergenceError("distance LP failed to converge");
  double value = std::max(res.objective, 0.0);
  Vec y0 = V * res.x.head(lp.n);

  int d = target.dim();
  double budget = value + 1e-11 * (1.0 + value);
  std::vector<Vec> samples{y0};
  auto add_sample = [&](const Vec& y) {
    for (const auto& s : samples)
      if ((s - y).lpNorm<Eigen::Infinity>() <= 1e-10 * (1.0 + y.lpNorm<Eigen::Infinity>()))
        return;
    samples.push_back(y);
  };
  auto diam_of = [&]() {
    double dd = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i)
      for (std::size_t j = i + 1; j < samples.size(); ++j)
        dd = std::max(dd, norm_of(samples[i] - samples[j], n));
    return dd;
  };

  // first batch: +/- coordinate directions plus 4 seeded random ones
  for (int j = 0; j < d; ++j) {
    Vec u = Vec::Zero(d);
    u[j] = 1.0;
    add_sample(face_probe(lp, V, budget, u, iter_cap));
    u[j] = -1.0;
    add_sample(face_probe(lp, V, budget, u, iter_cap));
  }
  Rng rng(Rng::mix(probe_seed, 0x9e37u));
  for (int k = 0; k < 4; ++k) add_sample(face_probe(lp, V, budget, rng.unit_vector(d), iter_cap));
  double diam = diam_of();
  // extra batches until two consecutive ones agree
  for (int batch = 0; batch < 5; ++batch) {
    for (int k = 0; k < 4; ++k)
      add_sample(face_probe(lp, V, budget, rng.unit_vector(d), iter_cap));
    double nd = diam_of();
    bool stable = std::abs(nd - diam) < 1e-9;
    diam = nd;
    if (stable) break;
  }

  out.value = value;
  out.face_samples = std::move(samples);
  out.face_diameter = diam;
  out.witness = out.face_samples.front();
  for (const auto& s : out.face_samples)
    if (lex_less(s, out.witness)) out.witness = s;
  return out;
}

// ---------------------------------------------------------------------------
// hausdorff / interpolation / diameter / support

namespace {

double sup_vertices_to(const Mat& pts, const CompactSet& target, Norm n) {
  double best = 0.0;
  for (int i = 0; i < pts.cols(); ++i)
    best = std::max(best, distance_to(target, pts.col(i), n));
  return best;
}

double hausdorff_impl(const Mat& a, const CompactSet& A, const Mat& b,
                      const CompactSet& B, Norm n, const char* what) {
  require_same_dim(static_cast<int>(a.rows()), static_cast<int>(b.rows()), what);
  return std::max(sup_vertices_to(a, B, n), sup_vertices_to(b, A, n));
}

}  // namespace

double hausdorff(const ConvexPolytope& A, const ConvexPolytope& B, Norm n) {
  return hausdorff_impl(A.vertices(), A, B.vertices(), B, n, "hausdorff");
}
double hausdorff(const CompactPointSet& A, const CompactPointSet& B, Norm n) {
  return hausdorff_impl(A.points(), A, B.points(), B, n, "hausdorff");
}
double hausdorff(const ConvexPolytope& A, const CompactPointSet& B, Norm n) {
  return hausdorff_impl(A.vertices(), A, B.points(), B, n, "hausdorff");
}
double hausdorff(const CompactPointSet& A, const ConvexPolytope& B, Norm n) {
  return hausdorff_impl(A.points(), A, B.vertices(), B, n, "hausdorff");
}
double hausdorff(const CompactSet& A, const CompactSet& B, Norm n) {
  return std::visit([&](const auto& a, const auto& b) { return hausdorff(a, b, n); }, A, B);
}

namespace {

std::vector<Vec> ccw_cycle_from_lowest(const Mat& V) {
  auto pts = columns_of(V);
  std::size_t start = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i][1] < pts[start][1] ||
        (pts[i][1] == pts[start][1] && pts[i][0] < pts[start][0]))
      start = i;
  std::rotate(pts.begin(), pts.begin() + start, pts.end());
  return pts;
}

double cr(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

// classic convex polygon Minkowski sum walk; both inputs CCW
std::vector<Vec> minkowski_sum_2d(const Mat& Pv, const Mat& Qv) {
  auto P = ccw_cycle_from_lowest(Pv);
  auto Q = ccw_cycle_from_lowest(Qv);
  std::size_t m = P.size(), n = Q.size();
  P.push_back(P[0]);
  P.push_back(P[1]);
  Q.push_back(Q[0]);
  Q.push_back(Q[1]);
  std::vector<Vec> out;
  std::size_t i = 0, j = 0;
  while (i < m || j < n) {
    out.push_back(P[i] + Q[j]);
    double c = cr(P[i + 1] - P[i], Q[j + 1] - Q[j]);
    if (c >= 0 && i < m) ++i;
    if (c <= 0 && j < n) ++j;
  }
  return out;
}

}  // namespace

ConvexPolytope minkowski_interp(const ConvexPolytope& A, const ConvexPolytope& B,
                                double lambda) {
  require_same_dim(A.dim(), B.dim(), "minkowski_interp");
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::invalid_argument("minkowski_interp: lambda out of [0,1]");
  if (lambda == 1.0) return A;
  if (lambda == 0.0) return B;
  if (A.count() == 1)
    return B.scaled_about(Vec::Zero(B.dim()), 1.0 - lambda).translated(lambda * A.vertex(0));
  if (B.count() == 1)
    return A.scaled_about(Vec::Zero(A.dim()), lambda).translated((1.0 - lambda) * B.vertex(0));

  if (A.dim() == 2 && A.count() >= 3 && B.count() >= 3 &&
      static_cast<long>(A.count()) * B.count() > 4096) {
    Mat As = A.vertices() * lambda;
    Mat Bs = B.vertices() * (1.0 - lambda);
    return ConvexPolytope::hull(matrix_of(minkowski_sum_2d(As, Bs)));
  }
  std::vector<Vec> pts;
  pts.reserve(static_cast<std::size_t>(A.count()) * B.count());
  for (int i = 0; i < A.count(); ++i)
    for (int j = 0; j < B.count(); ++j)
      pts.push_back(lambda * A.vertex(i) + (1.0 - lambda) * B.vertex(j));
  return ConvexPolytope::hull(pts);
}

CompactPointSet pointwise_interp(const CompactPointSet& A, const CompactPointSet& B,
                                 double lambda) {
  require_same_dim(A.dim(), B.dim(), "pointwise_interp");
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::invalid_argument("pointwise_interp: lambda out of [0,1]");
  std::vector<Vec> pts;
  pts.reserve(static_cast<std::size_t>(A.count()) * B.count());
  for (int i = 0; i < A.count(); ++i)
    for (int j = 0; j < B.count(); ++j)
      pts.push_back(lambda * A.point(i) + (1.0 - lambda) * B.point(j));
  return CompactPointSet::of(pts);
}

namespace {
double diameter_of(const Mat& pts, Norm n) {
  double best = 0.0;
  for (int i = 0; i < pts.cols(); ++i)
    for (int j = i + 1; j < pts.cols(); ++j)
      best = std::max(best, norm_of(Vec(pts.col(i) - pts.col(j)), n));
  return best;
}
}  // namespace

double diameter(const ConvexPolytope& A, Norm n) { return diameter_of(A.vertices(), n); }
double diameter(const CompactPointSet& A, Norm n) { return diameter_of(A.points(), n); }
double diameter(const CompactSet& A, Norm n) {
  return std::visit([&](const auto& a) { return diameter(a, n); }, A);
}

SupportFace support(const ConvexPolytope& A, const Vec& u, double tol) {
  require_same_dim(A.dim(), static_cast<int>(u.size()), "support");
  if (u.lpNorm<Eigen::Infinity>() <= 0.0)
    throw std::invalid_argument("support: zero direction");
  Vec vals = A.vertices().transpose() * u;
  SupportFace f;
  f.value = vals.maxCoeff();
  for (int i = 0; i < vals.size(); ++i)
    if (vals[i] >= f.value - tol) f.argmax.push_back(i);
  return f;
}

// ---------------------------------------------------------------------------
// rays, interiority

double ray_length(const ConvexPolytope& P, const Vec& u) {
  require_same_dim(P.dim(), static_cast<int>(u.size()), "ray_length");
  if (u.lpNorm<Eigen::Infinity>() <= 0.0)
    throw std::invalid_argument("ray_length: zero direction");
  int d = P.dim(), m = P.count();
  if (d == 2 && m >= 3) {
    const Mat& V = P.vertices();
    double best = 0.0;
    for (int i = 0; i < m; ++i) {
      Vec a = V.col(i), b = V.col((i + 1) % m);
      Vec e = b - a;
      double det = u[0] * (-e[1]) - u[1] * (-e[0]);
      if (std::abs(det) < 1e-300) continue;
      double t = (a[0] * (-e[1]) - a[1] * (-e[0])) / det;
      double s = (u[0] * a[1] - u[1] * a[0]) / det;
      if (t > 0.0 && s >= -1e-12 && s <= 1.0 + 1e-12) best = std::max(best, t);
    }
    if (best > 0.0) return best;
    // fall through to the LP when the polygon walk finds nothing (degenerate)
  }
  // max t s.t. t*u = V lambda, sum lambda = 1, all vars >= 0
  Mat A(d + 1, m + 1);
  A.topLeftCorner(d, m) = P.vertices();
  A.block(0, m, d, 1) = -u;
  A.row(d).head(m).setOnes();
  A(d, m) = 0.0;
  Vec b = Vec::Zero(d + 1);
  b[d] = 1.0;
  Vec c = Vec::Zero(m + 1);
  c[m] = -1.0;
  LpResult res = solve_lp(A, b, c);
  if (res.status != LpResult::Status::Optimal)
    throw ConvergenceError("ray LP failed (is the origin interior?)");
  return res.x[m];
}

bool full_dimensional(const ConvexPolytope& P, double tol) {
  int d = P.dim();
  if (P.count() < d + 1) return false;
  Mat M = P.vertices().rightCols(P.count() - 1).colwise() - Vec(P.vertex(0));
  Eigen::ColPivHouseholderQR<Mat> qr(M);
  qr.setThreshold(tol);
  return qr.rank() == d;
}

double interior_margin(const ConvexPolytope& P, const Vec& x) {
  if (!contains(P, x, 1e-12)) return 0.0;
  int d = P.dim();
  double scale = std::max(diameter(P, Norm::Linf), 1e-9);
  double rho = scale / 2.0;
  for (int step = 0; step < 60; ++step) {
    bool ok = true;
    for (int j = 0; j < d && ok; ++j) {
      Vec e = Vec::Zero(d);
      e[j] = rho;
      ok = contains(P, x + e, 1e-12) && contains(P, x - e, 1e-12);
    }
    if (ok) return rho;
    rho *= 0.5;
    if (rho < 1e-11) break;  // below the membership tolerance: not interior
  }
  return 0.0;
}

Vec deep_interior_point(const ConvexPolytope& P) {
  int d = P.dim(), m = P.count();
  Vec centroid = P.vertices().rowwise().mean();
  if (m <= d) return centroid;
  // maximize t s.t. c +/- t e_j in P for all axes, c = V mu
  int K = 2 * d;
  int cols = m * (K + 1) + 1;
  int rows = K * (d + 1) + 1;
  Mat A = Mat::Zero(rows, cols);
  Vec b = Vec::Zero(rows);
  Vec c = Vec::Zero(cols);
  int tcol = cols - 1;
  for (int k = 0; k < K; ++k) {
    int axis = k % d;
    double sign = (k < d) ? 1.0 : -1.0;
    int lam0 = m * (k + 1);
    for (int r = 0; r < d; ++r) {
      A.row(k * (d + 1) + r).segment(lam0, m) = P.vertices().row(r);
      A.row(k * (d + 1) + r).segment(0, m) = -P.vertices().row(r);
      if (r == axis) A(k * (d + 1) + r, tcol) = -sign;
    }
    A.row(k * (d + 1) + d).segment(lam0, m).setOnes();
    b[k * (d + 1) + d] = 1.0;
  }
  A.row(rows - 1).segment(0, m).setOnes();
  b[rows - 1] = 1.0;
  c[tcol] = -1.0;
  LpResult res = solve_lp(A, b, c);
  if (res.status != LpResult::Status::Optimal) return centroid;
  return P.vertices() * res.x.head(m);
}

}  // namespace svkit
