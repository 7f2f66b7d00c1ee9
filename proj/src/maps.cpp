#include "svkit/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <variant>

namespace svkit {

// ---------------------------------------------------------------------------
// scalar fields

ScalarField ScalarField::constant(double value) {
  if (!(value >= 0.0 && value <= 1.0))
    throw std::invalid_argument("ScalarField::constant: value out of [0,1]");
  ScalarField f;
  f.kind_ = Kind::Constant;
  f.value_ = value;
  f.lip_ = 0.0;
  return f;
}

ScalarField ScalarField::bump(Vec center, double radius, Norm n) {
  if (radius <= 0.0) throw std::invalid_argument("ScalarField::bump: radius <= 0");
  ScalarField f;
  f.kind_ = Kind::Bump;
  f.center_ = std::move(center);
  f.radius_ = radius;
  f.norm_ = n;
  f.lip_ = 1.0 / radius;
  return f;
}

double ScalarField::operator()(const Vec& x) const {
  if (kind_ == Kind::Constant) return value_;
  return std::max(1.0 - norm_of(Vec(x - center_), norm_) / radius_, 0.0);
}

Vec bump_phi(const Vec& x, double r, double R, Norm n) {
  if (!(0.0 < r && r < R)) throw std::invalid_argument("bump_phi: need 0 < r < R");
  double t = norm_of(x, n);
  if (t <= r) return Vec::Zero(x.size());
  if (t >= R) return x;
  double s = (t - r) * R / ((R - r) * t);
  return s * x;
}

// ---------------------------------------------------------------------------
// construction tree

struct SetValuedMap::Node {
  struct Constant {
    ConvexPolytope value;
  };
  struct Affine {
    Mat M;
    ConvexPolytope offsets;
  };
  struct Blend {
    ConvexPolytope A;
    ScalarField weight;
    std::shared_ptr<const Node> base;
  };
  struct Perturbed {
    std::shared_ptr<const Node> base;
    Vec xi;
    ConvexPolytope K;
    double rho, r, R;
  };

  ConvexPolytope domain;
  Norm norm = Norm::Euclidean;
  double lip = 0.0;
  std::variant<Constant, Affine, Blend, Perturbed> impl;
};

namespace {

using Node = SetValuedMap::Node;

ConvexPolytope eval_node(const Node& n, const Vec& x) {
  return std::visit(
      [&](const auto& impl) -> ConvexPolytope {
        using T = std::decay_t<decltype(impl)>;
        if constexpr (std::is_same_v<T, Node::Constant>) {
          return impl.value;
        } else if constexpr (std::is_same_v<T, Node::Affine>) {
          // translation of the offset polytope preserves extremality
          return impl.offsets.translated(Vec(impl.M * x));
        } else if constexpr (std::is_same_v<T, Node::Blend>) {
          double w = impl.weight(x);
          return minkowski_interp(impl.A, eval_node(*impl.base, x), w);
        } else {
          double t = norm_of(Vec(x - impl.xi), n.norm);
          if (t >= impl.R) return eval_node(*impl.base, x);  // untouched far field
          double lam = std::max(1.0 - t / impl.r, 0.0);
          Vec inner_arg = impl.xi + bump_phi(Vec(x - impl.xi), impl.r, impl.R, n.norm);
          return minkowski_interp(impl.K, eval_node(*impl.base, inner_arg), lam);
        }
      },
      n.impl);
}

bool is_leaf(const Node& n) {
  return std::holds_alternative<Node::Constant>(n.impl) ||
         std::holds_alternative<Node::Affine>(n.impl);
}

const Node* child_of(const Node& n) {
  if (auto* b = std::get_if<Node::Blend>(&n.impl)) return b->base.get();
  if (auto* p = std::get_if<Node::Perturbed>(&n.impl)) return p->base.get();
  return nullptr;
}

void require_map(const SetValuedMap& m, const char* what) {
  if (!m.node()) throw std::invalid_argument(std::string(what) + ": empty map");
}

}  // namespace

SetValuedMap SetValuedMap::constant(ConvexPolytope domain, Norm n, ConvexPolytope value) {
  if (domain.dim() != value.dim())
    throw std::invalid_argument("SetValuedMap::constant: dimension mismatch");
  if (!hull_contains(domain, value, kHullTol))
    throw std::invalid_argument("SetValuedMap::constant: value escapes the domain");
  auto node = std::make_shared<Node>();
  node->domain = std::move(domain);
  node->norm = n;
  node->lip = 0.0;
  node->impl = Node::Constant{std::move(value)};
  return SetValuedMap(std::move(node));
}

SetValuedMap SetValuedMap::affine(ConvexPolytope domain, Norm n, Mat M,
                                  ConvexPolytope offsets, bool certify_range) {
  if (domain.dim() != offsets.dim() || M.rows() != domain.dim() ||
      M.cols() != domain.dim())
    throw std::invalid_argument("SetValuedMap::affine: dimension mismatch");
  if (certify_range) {
    // the image of the domain is spanned by images of its vertices, so the
    // containment check over vertex pairs is exact
    for (int i = 0; i < domain.count(); ++i)
      for (int j = 0; j < offsets.count(); ++j) {
        Vec img = M * domain.vertex(i) + offsets.vertex(j);
        if (!contains(domain, img, kHullTol))
          throw std::invalid_argument("SetValuedMap::affine: range escapes the domain");
      }
  }
  auto node = std::make_shared<Node>();
  node->domain = std::move(domain);
  node->norm = n;
  node->lip = operator_norm(M, n);
  node->impl = Node::Affine{std::move(M), std::move(offsets)};
  return SetValuedMap(std::move(node));
}

const ConvexPolytope& SetValuedMap::domain() const {
  require_map(*this, "domain");
  return node_->domain;
}

Norm SetValuedMap::norm() const {
  require_map(*this, "norm");
  return node_->norm;
}

double SetValuedMap::lip_bound() const {
  require_map(*this, "lip_bound");
  return node_->lip;
}

SetValuedMap::Kind SetValuedMap::kind() const {
  require_map(*this, "kind");
  const Node* child = child_of(*node_);
  if (child && !is_leaf(*child)) return Kind::Composite;
  if (std::holds_alternative<Node::Constant>(node_->impl)) return Kind::Constant;
  if (std::holds_alternative<Node::Affine>(node_->impl)) return Kind::AffinePolytope;
  if (std::holds_alternative<Node::Blend>(node_->impl)) return Kind::ConvexBlend;
  return Kind::PointPerturbed;
}

ConvexPolytope SetValuedMap::eval(const Vec& x) const {
  require_map(*this, "eval");
  if (x.size() != node_->domain.dim())
    throw std::invalid_argument("SetValuedMap::eval: dimension mismatch");
  return eval_node(*node_, x);
}

// ---------------------------------------------------------------------------
// operations

Vec sample_in_polytope(const ConvexPolytope& P, Rng& rng) {
  return P.vertices() * rng.simplex_weights(P.count());
}

std::vector<Vec> sample_domain_points(const ConvexPolytope& domain, int count,
                                      std::uint64_t seed) {
  Rng rng(Rng::mix(seed, 0x9a5));
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(count) + domain.count());
  for (int i = 0; i < domain.count(); ++i) out.push_back(domain.vertex(i));
  for (int i = 0; i < count; ++i) out.push_back(sample_in_polytope(domain, rng));
  return out;
}

double d_infinity(const SetValuedMap& F, const SetValuedMap& G,
                  std::span<const Vec> sample_points, bool refine) {
  require_map(F, "d_infinity");
  require_map(G, "d_infinity");
  if (!hull_equal(F.domain(), G.domain(), kHullTol))
    throw std::invalid_argument("d_infinity: maps have different domains");
  if (sample_points.empty()) throw std::invalid_argument("d_infinity: empty sample");
  Norm n = F.norm();
  double best = 0.0;
  Vec best_x = sample_points.front();
  for (const auto& x : sample_points) {
    double h = hausdorff(F.eval(x), G.eval(x), n);
    if (h > best) {
      best = h;
      best_x = x;
    }
  }
  if (refine) {
    int d = F.domain().dim();
    double step = 0.125 * std::max(diameter(F.domain(), n), 1e-9);
    Vec x = best_x;
    for (int round = 0; round < 14; ++round) {
      bool improved = false;
      for (int j = 0; j < d; ++j)
        for (double sgn : {1.0, -1.0}) {
          Vec cand = x;
          cand[j] += sgn * step;
          if (!contains(F.domain(), cand, 1e-12)) continue;
          double h = hausdorff(F.eval(cand), G.eval(cand), n);
          if (h > best) {
            best = h;
            x = cand;
            improved = true;
          }
        }
      if (!improved) step *= 0.5;
      if (step < 1e-7) break;
    }
  }
  return best;
}

SetValuedMap densify_contraction(const SetValuedMap& G, double gamma,
                                 const ConvexPolytope& A) {
  require_map(G, "densify_contraction");
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("densify_contraction: gamma must lie in (0,1)");
  if (!hull_contains(G.domain(), A, kHullTol))
    throw std::invalid_argument("densify_contraction: A escapes the domain");
  auto node = std::make_shared<Node>();
  node->domain = G.domain();
  node->norm = G.norm();
  node->lip = (1.0 - gamma) * G.lip_bound();
  node->impl = Node::Blend{A, ScalarField::constant(gamma), G.node()};
  return SetValuedMap(std::move(node));
}

SetValuedMap convex_blend(const SetValuedMap& F, const ConvexPolytope& A,
                          const ScalarField& weight) {
  require_map(F, "convex_blend");
  if (!hull_contains(F.domain(), A, kHullTol))
    throw std::invalid_argument("convex_blend: A escapes the domain");
  // the declared bound needs max_y h(A, F(y)); sampled deterministically
  double hmax = 0.0;
  for (const auto& y : sample_domain_points(F.domain(), 200, 0xb1e0d))
    hmax = std::max(hmax, hausdorff(A, F.eval(y), F.norm()));
  auto node = std::make_shared<Node>();
  node->domain = F.domain();
  node->norm = F.norm();
  node->lip = F.lip_bound() + weight.lip_bound() * hmax;
  node->impl = Node::Blend{A, weight, F.node()};
  return SetValuedMap(std::move(node));
}

SetValuedMap perturb_at_point(const SetValuedMap& F, const Vec& xi,
                              const ConvexPolytope& K, double rho, double r, double R) {
  require_map(F, "perturb_at_point");
  if (!contains(F.domain(), xi, kHullTol))
    throw std::invalid_argument("perturb_at_point: xi is not in the domain");
  if (!(0.0 < rho)) throw std::invalid_argument("perturb_at_point: rho must be positive");
  if (!(rho < r)) throw std::invalid_argument("perturb_at_point: need rho < r");
  if (!(r < R)) throw std::invalid_argument("perturb_at_point: need r < R");
  if (!hull_contains(F.domain(), K, kHullTol))
    throw std::invalid_argument("perturb_at_point: K escapes the domain");
  double h0 = hausdorff(K, F.eval(xi), F.norm());
  if (!(h0 < rho))
    throw std::invalid_argument("perturb_at_point: h(K, F(xi)) = " + std::to_string(h0) +
                                " is not below rho = " + std::to_string(rho));
  auto node = std::make_shared<Node>();
  node->domain = F.domain();
  node->norm = F.norm();
  node->lip = std::max(R / (R - r) * F.lip_bound(), F.lip_bound() + rho / r);
  node->impl = Node::Perturbed{F.node(), xi, K, rho, r, R};
  return SetValuedMap(std::move(node));
}

double estimate_lip(const SetValuedMap& F, int pairs, std::uint64_t seed, bool refine) {
  require_map(F, "estimate_lip");
  if (pairs < 1) throw std::invalid_argument("estimate_lip: pairs >= 1");
  Norm n = F.norm();
  Rng rng(Rng::mix(seed, 0x11b));
  double best = 0.0;
  Vec bx, by;
  for (int k = 0; k < pairs; ++k) {
    Vec x = sample_in_polytope(F.domain(), rng);
    Vec y = sample_in_polytope(F.domain(), rng);
    double dxy = norm_of(Vec(x - y), n);
    if (dxy < 1e-9) continue;
    double ratio = hausdorff(F.eval(x), F.eval(y), n) / dxy;
    if (ratio > best) {
      best = ratio;
      bx = x;
      by = y;
    }
  }
  if (refine && bx.size()) {
    int d = F.domain().dim();
    double step = 0.05 * std::max(diameter(F.domain(), n), 1e-9);
    for (int round = 0; round < 12; ++round) {
      bool improved = false;
      for (int side = 0; side < 2; ++side)
        for (int j = 0; j < d; ++j)
          for (double sgn : {1.0, -1.0}) {
            Vec x = bx, y = by;
            Vec& mv = side ? y : x;
            mv[j] += sgn * step;
            if (!contains(F.domain(), mv, 1e-12)) continue;
            double dxy = norm_of(Vec(x - y), n);
            if (dxy < 1e-9) continue;
            double ratio = hausdorff(F.eval(x), F.eval(y), n) / dxy;
            if (ratio > best) {
              best = ratio;
              bx = x;
              by = y;
              improved = true;
            }
          }
      if (!improved) step *= 0.5;
      if (step < 1e-7) break;
    }
  }
  return best;
}

}  // namespace svkit
