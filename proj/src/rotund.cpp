#include "svkit/rotund.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "svkit/linprog.hpp"
#include "svkit/rng.hpp"

namespace svkit {
namespace {

Vec radial_image(const Vec& c, double a) { return c / (1.0 + a * c.norm()); }

// inverse of the radial map; only defined for a|x| < 1
Vec radial_preimage(const Vec& x, double a) {
  double s = 1.0 - a * x.norm();
  if (s <= 0.0) throw std::invalid_argument("radial preimage outside the map's range");
  return x / s;
}

// boundary segments of a polytope with 0 interior: polygon edges in the
// plane, vertex pairs whose midpoint is radially extremal otherwise
std::vector<std::pair<Vec, Vec>> boundary_edges(const ConvexPolytope& base) {
  std::vector<std::pair<Vec, Vec>> out;
  int m = base.count();
  int d = base.dim();
  if (d == 1 || m == 2) {
    if (m >= 2) out.emplace_back(base.vertex(0), base.vertex(1));
    return out;
  }
  if (d == 2) {
    for (int i = 0; i < m; ++i) out.emplace_back(base.vertex(i), base.vertex((i + 1) % m));
    return out;
  }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Vec mid = 0.5 * (base.vertex(i) + base.vertex(j));
      double r = mid.norm();
      if (r < 1e-12) continue;  // passes through the interior
      double ray = ray_length(base, mid / r);
      if (ray <= r * (1.0 + 1e-9) + 1e-12) out.emplace_back(base.vertex(i), base.vertex(j));
    }
  return out;
}

std::vector<Vec> boundary_mesh(const ConvexPolytope& base, int subdiv) {
  std::vector<Vec> pts;
  for (int i = 0; i < base.count(); ++i) pts.push_back(base.vertex(i));
  auto edges = boundary_edges(base);
  double cell = std::max(diameter(base, Norm::Euclidean), 1e-12) / std::max(subdiv, 1);
  for (const auto& [p, q] : edges) {
    double len = (q - p).norm();
    int k = std::clamp(static_cast<int>(std::ceil(len / cell)), 1, 8 * std::max(subdiv, 1));
    for (int t = 1; t < k; ++t) pts.push_back(p + (q - p) * (static_cast<double>(t) / k));
  }
  return pts;
}

int default_subdiv(int dim) { return dim <= 2 ? 32 : 8; }

}  // namespace

Vec RotundSet::map(const Vec& ambient_base_point) const {
  return shift_ + radial_image(Vec(ambient_base_point - shift_), a_);
}

RotundSet klee_map(const ConvexPolytope& C, double eps, const Vec& interior_point,
                   int approx_subdiv) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("klee_map: eps must lie in (0,1)");
  if (C.dim() != interior_point.size())
    throw std::invalid_argument("klee_map: dimension mismatch");
  if (!full_dimensional(C))
    throw std::invalid_argument(
        "klee_map: C is lower-dimensional; every point would be a support point");
  if (interior_margin(C, interior_point) <= 0.0)
    throw std::invalid_argument("klee_map: interior_point is not strictly interior");
  if (approx_subdiv < 1) approx_subdiv = default_subdiv(C.dim());

  ConvexPolytope base = C.translated(-interior_point);
  double M = 0.0;
  for (int i = 0; i < base.count(); ++i) M = std::max(M, base.vertex(i).norm());
  double a = eps / (2.0 * (1.0 - eps) * M);

  auto mesh = boundary_mesh(base, approx_subdiv);
  std::vector<Vec> img;
  img.reserve(mesh.size());
  for (const auto& c : mesh) img.push_back(interior_point + radial_image(c, a));
  ConvexPolytope approx = ConvexPolytope::hull(img);

  // approx_tol from boundary probes; l1 distances dominate the other norms
  double tol_est = 0.0;
  Rng rng(0xb0d7ull);
  int d = C.dim();
  for (int k = 0; k < 96; ++k) {
    Vec u = rng.unit_vector(d);
    double ray = ray_length(base, u);
    Vec bd = interior_point + radial_image(Vec(ray * u), a);
    tol_est = std::max(tol_est, distance_to(approx, bd, Norm::L1));
  }
  for (const auto& c : mesh) {
    Vec bd = interior_point + radial_image(c, a);
    tol_est = std::max(tol_est, distance_to(approx, bd, Norm::L1));
  }

  RotundSet K(base, interior_point, a, eps, approx, tol_est, approx_subdiv);

  // sandwich checks on the vertices
  for (int i = 0; i < base.count(); ++i) {
    Vec w = base.vertex(i);
    if (rotund_membership(K, Vec(interior_point + (1.0 - eps) * w)) == Membership::Outside)
      throw Error("klee_map: inner containment (1-eps)C failed at a vertex");
    if (!contains(C, Vec(interior_point + radial_image(w, a)), 1e-9))
      throw Error("klee_map: image of a vertex escaped C");
  }
  return K;
}

Membership rotund_membership(const RotundSet& K, const Vec& x, double tol) {
  if (x.size() != K.dim())
    throw std::invalid_argument("rotund_membership: dimension mismatch");
  Vec w = x - K.shift();
  double r = w.norm();
  if (r < 1e-300) return Membership::Inside;
  double ray = ray_length(K.base(), w / r);
  double rb = ray / (1.0 + K.radial_a() * ray);  // boundary radius along w
  if (r < rb - tol) return Membership::Inside;
  if (r <= rb + tol) return Membership::Boundary;
  return Membership::Outside;
}

namespace {

// point of the image boundary at polygon parameter t in [0, m)
Vec image_boundary_point(const RotundSet& K, double t) {
  const auto& V = K.base().vertices();
  int m = static_cast<int>(V.cols());
  t = std::fmod(t, static_cast<double>(m));
  if (t < 0) t += m;
  int e = static_cast<int>(t);
  double frac = t - e;
  Vec c = V.col(e % m) * (1.0 - frac) + V.col((e + 1) % m) * frac;
  return K.shift() + radial_image(c, K.radial_a());
}

template <typename F>
double golden_min(F&& f, double lo, double hi, int iters = 120) {
  const double phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters && b - a > 1e-14 * (1.0 + std::abs(a)); ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

// projection of a vector onto the probability simplex (sort-based)
Vec project_to_simplex(Vec v) {
  int n = static_cast<int>(v.size());
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0, theta = 0.0;
  for (int i = 0; i < n; ++i) {
    css += u[i];
    double t = (css - 1.0) / (i + 1);
    if (u[i] - t > 0) theta = t;
  }
  for (int i = 0; i < n; ++i) v[i] = std::max(v[i] - theta, 0.0);
  double s = v.sum();
  if (s > 1e-300) v /= s;
  return v;
}

Vec norm_subgradient(const Vec& e, Norm n) {
  int d = static_cast<int>(e.size());
  Vec g = Vec::Zero(d);
  switch (n) {
    case Norm::Euclidean: {
      double r = e.norm();
      if (r > 1e-300) g = e / r;
      break;
    }
    case Norm::L1:
      for (int i = 0; i < d; ++i) g[i] = double((e[i] > 0) - (e[i] < 0));
      break;
    case Norm::Linf: {
      int best = 0;
      e.cwiseAbs().maxCoeff(&best);
      g[best] = double((e[best] > 0) - (e[best] < 0));
      break;
    }
  }
  return g;
}

// local minimization of |target - T(V lambda)| over the simplex,
// projected (sub)gradient with step halving
Vec simplex_descent(const RotundSet& K, const Vec& target_base, Vec lambda, Norm n,
                    double tol, int iters = 1200) {
  const Mat& V = K.base().vertices();
  double a = K.radial_a();
  auto value = [&](const Vec& lam) {
    Vec c = V * lam;
    return norm_of(Vec(target_base - radial_image(c, a)), n);
  };
  double f = value(lambda);
  double step = 0.5;
  for (int it = 0; it < iters; ++it) {
    Vec c = V * lambda;
    double r = c.norm();
    Vec e = target_base - radial_image(c, a);
    Vec g = norm_subgradient(e, n);
    Mat J;
    if (r > 1e-300) {
      double denom = 1.0 + a * r;
      J = Mat::Identity(c.size(), c.size()) / denom -
          (a / (r * denom * denom)) * (c * c.transpose());
    } else {
      J = Mat::Identity(c.size(), c.size());
    }
    Vec grad = -V.transpose() * (J.transpose() * g);
    bool moved = false;
    for (int h = 0; h < 45; ++h) {
      Vec cand = project_to_simplex(lambda - step * grad);
      double fc = value(cand);
      if (fc < f - 1e-16) {
        double movement = (cand - lambda).lpNorm<Eigen::Infinity>();
        lambda = cand;
        f = fc;
        moved = true;
        if (movement < tol * 1e-3) return lambda;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
    step = std::min(step * 4.0, 1.0);
  }
  return lambda;
}

}  // namespace

ProjectionFace project_rotund(const RotundSet& K, const Vec& x, Norm n, double tol,
                              std::uint64_t seed) {
  if (x.size() != K.dim())
    throw std::invalid_argument("project_rotund: dimension mismatch");
  if (tol <= 0.0) throw std::invalid_argument("project_rotund: tol must be positive");
  if (rotund_membership(K, x) != Membership::Outside) {
    ProjectionFace pf;
    pf.witness = x;
    pf.value = 0.0;
    pf.face_samples = {x};
    return pf;
  }
  ProjectionFace pf = project_point(K.approx(), x, n, kDefaultProjTol, kDefaultIterCap,
                                    Rng::mix(seed, 0x77));
  Vec best = pf.witness;  // approx is inside K, so this is a valid candidate
  double best_val = norm_of(Vec(x - best), n);
  Vec target_base = x - K.shift();

  // projected-gradient refinement from the preimage of the approx witness,
  // with a seeded jitter of the starting weights
  {
    Vec c0 = radial_preimage(Vec(pf.witness - K.shift()), K.radial_a());
    Mat A(K.dim() + 1, K.base().count());
    A.topRows(K.dim()) = K.base().vertices();
    A.row(K.dim()).setOnes();
    Vec b(K.dim() + 1);
    b.head(K.dim()) = c0;
    b[K.dim()] = 1.0;
    auto feas = solve_feasibility(A, b, 1e-7);
    Vec lam;
    if (feas.feasible && feas.x.size() == K.base().count() && feas.x.sum() > 0.5)
      lam = feas.x / feas.x.sum();
    else
      lam = Vec::Ones(K.base().count()) / K.base().count();
    Rng rng(Rng::mix(seed, 0x5eed));
    Vec jitter = rng.simplex_weights(K.base().count());
    lam = project_to_simplex(Vec(0.92 * lam + 0.08 * jitter));
    lam = simplex_descent(K, target_base, lam, n, tol);
    Vec p = K.shift() + radial_image(Vec(K.base().vertices() * lam), K.radial_a());
    double v = norm_of(Vec(x - p), n);
    if (v < best_val) {
      best_val = v;
      best = p;
    }
  }

  // planar polish: coarse angular scan with a seeded phase, then golden
  if (K.dim() == 2 && K.base().count() >= 3) {
    int m = K.base().count();
    int scan = std::max(720, 8 * m);
    Rng rng(Rng::mix(seed, 0xa1));
    double phase = rng.uniform() * (static_cast<double>(m) / scan);
    auto g = [&](double t) { return norm_of(Vec(x - image_boundary_point(K, t)), n); };
    double bt = 0.0, bg = std::numeric_limits<double>::infinity();
    for (int i = 0; i < scan; ++i) {
      double t = phase + static_cast<double>(m) * i / scan;
      double v = g(t);
      if (v < bg) {
        bg = v;
        bt = t;
      }
    }
    double cell = static_cast<double>(m) / scan;
    double t_star = golden_min(g, bt - cell, bt + cell);
    Vec p = image_boundary_point(K, t_star);
    double v = norm_of(Vec(x - p), n);
    if (v < best_val) {
      best_val = v;
      best = p;
    }
  }

  pf.witness = best;
  pf.value = best_val;
  return pf;
}

namespace {

// probe directions: coordinate axes first (they expose the axis-aligned faces
// a random draw would almost surely miss), then seeded random ones
std::vector<Vec> probe_directions(int dim, int count, std::uint64_t seed) {
  std::vector<Vec> dirs;
  for (int j = 0; j < dim && static_cast<int>(dirs.size()) < count; ++j) {
    Vec u = Vec::Zero(dim);
    u[j] = 1.0;
    dirs.push_back(u);
    if (static_cast<int>(dirs.size()) < count) dirs.push_back(Vec(-u));
  }
  Rng rng(Rng::mix(seed, 0xd12));
  while (static_cast<int>(dirs.size()) < count) dirs.push_back(rng.unit_vector(dim));
  return dirs;
}

}  // namespace

RotundityProbe rotundity_probe(const ConvexPolytope& P, int directions,
                               std::uint64_t seed, int n) {
  if (directions < 1) throw std::invalid_argument("rotundity_probe: directions >= 1");
  RotundityProbe out;
  if (P.count() == 1) {
    out.pass = true;
    return out;
  }
  for (const Vec& u : probe_directions(P.dim(), directions, seed)) {
    auto f = support(P, u);
    double dm = 0.0;
    for (std::size_t i = 0; i < f.argmax.size(); ++i)
      for (std::size_t j = i + 1; j < f.argmax.size(); ++j)
        dm = std::max(dm, (P.vertex(f.argmax[i]) - P.vertex(f.argmax[j])).norm());
    out.max_face_diam = std::max(out.max_face_diam, dm);
  }
  out.pass = out.max_face_diam < 1.0 / n;
  return out;
}

RotundityProbe rotundity_probe(const RotundSet& K, int directions, std::uint64_t seed,
                               int n) {
  if (directions < 1) throw std::invalid_argument("rotundity_probe: directions >= 1");
  auto edges = boundary_edges(K.base());
  double a = K.radial_a();
  int sub = std::max(K.subdiv(), 16);
  double cell = std::max(diameter(K.base(), Norm::Euclidean), 1e-12) / sub;

  RotundityProbe out;
  for (const Vec& u : probe_directions(K.dim(), directions, seed)) {
    struct Cand {
      std::size_t edge;
      double t;
      double val;
    };
    std::vector<Cand> cands;
    double global = -std::numeric_limits<double>::infinity();
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const auto& [p, q] = edges[e];
      int steps = std::clamp(static_cast<int>(std::ceil((q - p).norm() / cell)), 1, 8 * sub);
      double bt = 0.0, bv = -std::numeric_limits<double>::infinity();
      for (int i = 0; i <= steps; ++i) {
        double t = static_cast<double>(i) / steps;
        double v = u.dot(radial_image(Vec(p + t * (q - p)), a));
        if (v > bv) {
          bv = v;
          bt = t;
        }
      }
      cands.push_back({e, bt, bv});
      global = std::max(global, bv);
    }
    double slack = std::max(1e-12, cell);
    std::vector<Vec> face;
    double refined_best = -std::numeric_limits<double>::infinity();
    for (const auto& c : cands) {
      if (c.val < global - slack) continue;
      const auto& [p, q] = edges[c.edge];
      auto neg = [&](double t) {
        return -u.dot(radial_image(Vec(p + std::clamp(t, 0.0, 1.0) * (q - p)), a));
      };
      int steps = std::clamp(static_cast<int>(std::ceil((q - p).norm() / cell)), 1, 8 * sub);
      double w = 1.0 / steps;
      double t_star = golden_min(neg, std::max(0.0, c.t - w), std::min(1.0, c.t + w));
      Vec pt = radial_image(Vec(p + t_star * (q - p)), a);
      refined_best = std::max(refined_best, u.dot(pt));
      face.push_back(pt);
    }
    double dm = 0.0;
    for (std::size_t i = 0; i < face.size(); ++i) {
      if (u.dot(face[i]) < refined_best - 1e-10) continue;
      for (std::size_t j = i + 1; j < face.size(); ++j) {
        if (u.dot(face[j]) < refined_best - 1e-10) continue;
        dm = std::max(dm, (face[i] - face[j]).norm());
      }
    }
    out.max_face_diam = std::max(out.max_face_diam, dm);
  }
  out.pass = out.max_face_diam < 1.0 / n;
  return out;
}

RotundSet rotundify(const ConvexPolytope& C, double eps, int approx_subdiv) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("rotundify: eps must lie in (0,1)");
  if (!full_dimensional(C))
    throw std::invalid_argument("rotundify: degenerate (lower-dimensional) input");
  double dia = diameter(C, Norm::Euclidean);
  double shrink = std::min(eps / (2.0 * std::max(dia, 1e-12)), eps);
  Vec center = deep_interior_point(C);
  return klee_map(C, shrink, center, approx_subdiv);
}

RotundSet point_anchored_rotundify(const ConvexPolytope& C, double eps, const Vec& z,
                                   int approx_subdiv) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("point_anchored_rotundify: eps must lie in (0,1)");
  if (!contains(C, z, kHullTol))
    throw std::invalid_argument("point_anchored_rotundify: z is not in C");
  if (!full_dimensional(C))
    throw std::invalid_argument("point_anchored_rotundify: degenerate input");
  double dia = diameter(C, Norm::Euclidean);
  double shrink0 = std::min(eps / (2.0 * std::max(dia, 1e-12)), eps);
  Vec interior = deep_interior_point(C);
  const double slides[] = {0.0, 0.5, 0.75, 0.875};
  for (double shrink = shrink0; shrink > 1e-12; shrink *= 0.5) {
    for (double t : slides) {
      Vec c0 = (1.0 - t) * interior + t * z;
      if (interior_margin(C, c0) <= 0.0) continue;
      RotundSet K = klee_map(C, shrink, c0, approx_subdiv);
      if (rotund_membership(K, z) != Membership::Outside) return K;
    }
  }
  throw Error("point_anchored_rotundify: no admissible shrink above 1e-12");
}

double projection_stability(std::span<const ConvexPolytope> C_seq,
                            const RotundSet& C_limit, std::span<const Vec> x_seq,
                            const Vec& x_limit, Norm n) {
  if (C_seq.size() != x_seq.size() || C_seq.empty())
    throw std::invalid_argument("projection_stability: sequence size mismatch");
  double prev = std::numeric_limits<double>::infinity();
  for (const auto& Ck : C_seq) {
    double h = hausdorff(Ck, C_limit.approx(), n);
    if (h > prev + 1e-9)
      throw std::invalid_argument("projection_stability: h(C_k, C) must be non-increasing");
    prev = h;
  }
  // reference projection at the resolution of the stored approximation, so a
  // constant sequence deviates by construction error only
  Vec pstar = project_point(C_limit.approx(), x_limit, n).witness;
  double worst = 0.0;
  std::size_t start = C_seq.size() / 2;
  for (std::size_t k = start; k < C_seq.size(); ++k) {
    Vec zk = project_point(C_seq[k], x_seq[k], n).witness;
    worst = std::max(worst, norm_of(Vec(zk - pstar), n));
  }
  return worst;
}

double stability_delta_search(const RotundSet& C, const Vec& x, double eps, int n,
                              Norm norm, int samples, std::uint64_t seed,
                              double delta_start) {
  if (eps <= 0.0) throw std::invalid_argument("stability_delta_search: eps > 0 required");
  if (n < 1 || samples < 1)
    throw std::invalid_argument("stability_delta_search: n and samples must be >= 1");
  Vec pstar = project_rotund(C, x, norm, 1e-9, Rng::mix(seed, 1)).witness;
  const Mat& AV = C.approx().vertices();
  int d = C.dim();
  double delta = delta_start > 0.0 ? delta_start : eps;
  for (int level = 0;; ++level) {
    if (delta < 1e-12)
      throw DeltaUnderflow(
          "stability_delta_search: delta fell below 1e-12 (degenerate configuration or "
          "approx too coarse)");
    double jit = 0.9 * (delta - C.approx_tol());
    if (jit > 0.0) {
      Rng rng(Rng::mix(seed, 1000 + level));
      bool ok = true;
      for (int s = 0; s < samples; ++s) {
        std::vector<Vec> pts;
        pts.reserve(AV.cols());
        for (int i = 0; i < AV.cols(); ++i)
          pts.push_back(Vec(AV.col(i)) + rng.ball_vector(d, jit, norm));
        ConvexPolytope K = ConvexPolytope::hull(pts);
        if (s == 0) {
          // spot check of the analytic jitter bound
          double hh = hausdorff(K, C.approx(), norm) + C.approx_tol();
          if (hh >= delta) {
            ok = false;
            break;
          }
        }
        Vec y = x + rng.ball_vector(d, delta, norm);
        auto pf = project_point(K, y, norm, kDefaultProjTol, kDefaultIterCap,
                                Rng::mix(seed, static_cast<std::uint64_t>(level) * 317 + s));
        double hval = norm_of(Vec(pf.witness - pstar), norm);
        for (const auto& f : pf.face_samples)
          hval = std::max(hval, norm_of(Vec(f - pstar), norm));
        if (pf.face_diameter > 1.0 / n + 1e-12 || hval >= eps) {
          ok = false;
          break;
        }
      }
      if (ok) return delta;
    }
    delta *= 0.5;
  }
}

}  // namespace svkit
