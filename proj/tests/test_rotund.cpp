#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "svkit/rotund.hpp"
#include "svkit/rng.hpp"
#include "test_util.hpp"

using namespace svkit;
using namespace svkit::testutil;

TEST_CASE("klee_map on the square reproduces the radial parameter") {
  auto sq = square();
  auto K = klee_map(sq, 0.5, vec2(0, 0), 32);
  CHECK(K.radial_a() == doctest::Approx(0.5 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(rotund_membership(K, vec2(0, 0)) == Membership::Inside);
  // the image of every vertex stays in C and the shrunk vertices stay inside
  for (int i = 0; i < sq.count(); ++i) {
    Vec w = sq.vertex(i);
    CHECK(contains(sq, K.map(w), 1e-9));
    CHECK(rotund_membership(K, Vec(0.5 * w)) == Membership::Inside);
  }
  CHECK(hull_contains(sq, K.approx(), 1e-9));
  CHECK(K.approx_tol() < 0.01);
}

TEST_CASE("klee_map rejects bad input") {
  auto sq = square();
  CHECK_THROWS_AS(klee_map(sq, 0.0, vec2(0, 0), 8), std::invalid_argument);
  CHECK_THROWS_AS(klee_map(sq, 1.0, vec2(0, 0), 8), std::invalid_argument);
  CHECK_THROWS_AS(klee_map(sq, 0.5, vec2(1, 1), 8), std::invalid_argument);  // vertex
  CHECK_THROWS_AS(klee_map(sq, 0.5, vec2(5, 0), 8), std::invalid_argument);  // outside
  auto seg = ConvexPolytope::hull(std::vector<Vec>{vec2(0, 0), vec2(1, 0)});
  CHECK_THROWS_AS(klee_map(seg, 0.5, vec2(0.5, 0), 8), std::invalid_argument);
}

TEST_CASE("membership classification: inside / boundary / outside") {
  auto sq = square();
  auto K = klee_map(sq, 0.5, vec2(0, 0), 48);
  double a = K.radial_a();
  // boundary images of boundary points classify as Boundary
  Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    double t = rng.uniform(0, 4);
    // walk the square boundary
    int e = static_cast<int>(t);
    double f = t - e;
    Vec c = sq.vertex(e % 4) * (1 - f) + sq.vertex((e + 1) % 4) * f;
    Vec img = K.map(c);
    CHECK(rotund_membership(K, img) == Membership::Boundary);
    CHECK(rotund_membership(K, Vec(1.01 * img)) == Membership::Outside);
    CHECK(rotund_membership(K, Vec(0.99 * img)) == Membership::Inside);
  }
  // beyond the radial range is outside
  Vec far = vec2(1.0 / a + 0.1, 0);
  CHECK(rotund_membership(K, far) == Membership::Outside);
}

TEST_CASE("the radial image is convex: chords stay inside") {
  Rng rng(17);
  auto P = random_polytope(2, 8, rng);
  Vec center = deep_interior_point(P);
  auto K = klee_map(P, 0.4, center, 32);
  for (int rep = 0; rep < 100; ++rep) {
    Vec wu = rng.simplex_weights(P.count());
    Vec wv = rng.simplex_weights(P.count());
    Vec u = P.vertices() * wu - center;
    Vec v = P.vertices() * wv - center;
    Vec Tu = K.map(Vec(center + u));
    Vec Tv = K.map(Vec(center + v));
    for (double t : {0.25, 0.5, 0.75}) {
      Vec mix = t * Tu + (1 - t) * Tv;
      CHECK(rotund_membership(K, mix) != Membership::Outside);
    }
  }
}

TEST_CASE("sandwich containments on vertices") {
  Rng rng(23);
  for (int rep = 0; rep < 5; ++rep) {
    auto P = random_polytope(2, 7, rng);
    Vec center = deep_interior_point(P);
    for (double eps : {0.1, 0.5}) {
      auto K = klee_map(P, eps, center, 32);
      for (int i = 0; i < P.count(); ++i) {
        Vec w = P.vertex(i) - center;
        CHECK(rotund_membership(K, Vec(center + (1 - eps) * w)) != Membership::Outside);
        Vec img = K.map(P.vertex(i));
        CHECK(rotund_membership(K, img) == Membership::Boundary);
        CHECK(rotund_membership(K, Vec(center + 1.01 * (img - center))) ==
              Membership::Outside);
      }
    }
  }
}

TEST_CASE("project_rotund basics") {
  auto sq = square();
  auto K = klee_map(sq, 0.5, vec2(0, 0), 64);
  SUBCASE("points of K project to themselves") {
    auto pf = project_rotund(K, vec2(0.1, -0.2), Norm::Euclidean);
    CHECK(pf.value == 0.0);
    CHECK((pf.witness - vec2(0.1, -0.2)).norm() == 0.0);
  }
  SUBCASE("value lies in the approx band") {
    Rng rng(5);
    for (int rep = 0; rep < 20; ++rep) {
      Vec x = 3.0 * rng.unit_vector(2);
      for (Norm n : {Norm::Euclidean, Norm::Linf}) {
        double da = distance_to(K.approx(), x, n);
        auto pf = project_rotund(K, x, n);
        CHECK(pf.value <= da + 1e-12);
        CHECK(pf.value >= da - K.approx_tol() - 1e-12);
      }
    }
  }
  SUBCASE("seeded starts agree (unique projection)") {
    Rng rng(9);
    for (int rep = 0; rep < 10; ++rep) {
      Vec x = 2.5 * rng.unit_vector(2);
      for (Norm n : {Norm::Euclidean, Norm::Linf}) {
        Vec w0 = project_rotund(K, x, n, 1e-8, 101).witness;
        for (std::uint64_t seed : {202ull, 303ull, 404ull, 505ull}) {
          Vec w = project_rotund(K, x, n, 1e-8, seed).witness;
          CHECK((w - w0).norm() < 1e-6);
        }
      }
    }
  }
}

TEST_CASE("rotundity probe") {
  SUBCASE("flat faces of the square are detected") {
    auto probe = rotundity_probe(square(), 200, 7, 1);
    CHECK(probe.max_face_diam == doctest::Approx(2.0).epsilon(1e-9));
    CHECK_FALSE(probe.pass);
  }
  SUBCASE("klee image of the square passes at fine scale") {
    auto K = klee_map(square(), 0.5, vec2(0, 0), 64);
    auto probe = rotundity_probe(K, 200, 7, 1000);
    CHECK(probe.max_face_diam <= 1e-3);
    CHECK(probe.pass);
  }
  SUBCASE("singletons have zero face diameter") {
    auto probe = rotundity_probe(ConvexPolytope::singleton(vec2(1, 2)), 50, 7, 1000000);
    CHECK(probe.max_face_diam == 0.0);
    CHECK(probe.pass);
  }
}

TEST_CASE("rotundity probe face diameter shrinks as the mesh refines") {
  auto sq = square();
  double prev = 1e300;
  for (int sub : {8, 16, 32, 64}) {
    auto K = klee_map(sq, 0.3, vec2(0, 0), sub);
    auto probe = rotundity_probe(K, 64, 11, 1000000);
    CHECK(probe.max_face_diam <= prev * 1.10 + 1e-12);
    prev = probe.max_face_diam;
  }
  CHECK(prev < 1e-4);
}

TEST_CASE("rotundify stays within eps and rounds the set") {
  Rng rng(31);
  for (int rep = 0; rep < 10; ++rep) {
    auto P = random_polytope(2, 8, rng);
    for (double eps : {0.1, 0.5}) {
      auto K = rotundify(P, eps);
      CHECK(hausdorff(K.approx(), P, Norm::Euclidean) < eps);
      CHECK(hull_contains(P, K.approx(), 1e-9));
    }
  }
  // a fine ball-like polytope stays rotund at n = 100
  std::vector<Vec> circle;
  for (int i = 0; i < 64; ++i)
    circle.push_back(vec2(std::cos(i * 0.0981747704), std::sin(i * 0.0981747704)));
  auto ball = ConvexPolytope::hull(circle);
  auto K = rotundify(ball, 0.05, 64);
  CHECK(rotundity_probe(K, 100, 3, 100).pass);
  // degenerate input errors
  auto seg = ConvexPolytope::hull(std::vector<Vec>{vec2(0, 0), vec2(1, 0)});
  CHECK_THROWS_AS(rotundify(seg, 0.5), std::invalid_argument);
}

TEST_CASE("rotundify at large eps keeps the inner containment") {
  auto sq = square();
  auto K = rotundify(sq, 0.9);
  double shrink = K.shrink_eps();
  Vec c = K.shift();
  for (int i = 0; i < sq.count(); ++i) {
    Vec w = sq.vertex(i) - c;
    CHECK(rotund_membership(K, Vec(c + (1 - shrink) * w)) != Membership::Outside);
  }
}

TEST_CASE("point-anchored rotundification") {
  auto sq = square();
  SUBCASE("interior anchor survives at the first shrink") {
    auto K = point_anchored_rotundify(sq, 0.3, vec2(0.2, 0.1));
    CHECK(rotund_membership(K, vec2(0.2, 0.1)) != Membership::Outside);
    auto plain = rotundify(sq, 0.3);
    CHECK(K.shrink_eps() == plain.shrink_eps());
  }
  SUBCASE("vertex anchor is reached by halving") {
    Vec z = vec2(1, 1);
    auto K = point_anchored_rotundify(sq, 0.4, z);
    CHECK(rotund_membership(K, z) != Membership::Outside);
    CHECK(hausdorff(K.approx(), sq, Norm::Euclidean) < 0.4);
  }
  SUBCASE("anchor at the center is identical to rotundify") {
    Vec center = deep_interior_point(sq);
    auto K1 = point_anchored_rotundify(sq, 0.25, center);
    auto K2 = rotundify(sq, 0.25);
    CHECK(K1.radial_a() == K2.radial_a());
    CHECK((K1.shift() - K2.shift()).norm() == 0.0);
    CHECK(K1.approx().vertices() == K2.approx().vertices());
  }
  SUBCASE("outside anchor is rejected") {
    CHECK_THROWS_AS(point_anchored_rotundify(sq, 0.3, vec2(2, 2)), std::invalid_argument);
  }
}

TEST_CASE("projection stability") {
  auto sq = square();
  auto limit = klee_map(sq, 0.4, vec2(0, 0), 256);
  SUBCASE("constant sequences stay within the approx band") {
    std::vector<ConvexPolytope> Cs(6, limit.approx());
    std::vector<Vec> xs(6, vec2(2.0, 0.7));
    double dev = projection_stability(Cs, limit, xs, vec2(2.0, 0.7), Norm::Euclidean);
    CHECK(dev <= 2 * limit.approx_tol() + 1e-9);
  }
  SUBCASE("refining approximations converge, including perturbed query points") {
    Vec x = vec2(1.7, -0.4);
    double prev = 1e300;
    double last = 0.0;
    for (int k = 2; k <= 7; ++k) {
      auto Kk = klee_map(sq, 0.4, vec2(0, 0), 1 << k);
      std::vector<ConvexPolytope> Cs{Kk.approx()};
      std::vector<Vec> xs{Vec(x + std::pow(2.0, -k) * vec2(0.3, 0.8))};
      double dev = projection_stability(Cs, limit, xs, x, Norm::Euclidean);
      CHECK(dev <= prev * 1.10 + 1e-12);  // decreasing in k (10% noise allowed)
      prev = dev;
      last = dev;
    }
    CHECK(last < 1e-2);
  }
}

TEST_CASE("stability delta search") {
  auto sq = square();
  auto K = klee_map(sq, 0.5, vec2(0, 0), 64);
  SUBCASE("interior query accepts immediately") {
    double got = stability_delta_search(K, vec2(0.05, 0.0), 0.1, 10, Norm::Euclidean,
                                        12, 42, 0.05);
    CHECK(got == doctest::Approx(0.05));
  }
  SUBCASE("external query returns a positive certificate radius") {
    double got = stability_delta_search(K, vec2(2.0, 0.4), 0.1, 10, Norm::Euclidean,
                                        16, 42);
    CHECK(got > 0.0);
    CHECK(got <= 0.1);
  }
  SUBCASE("doubling samples shrinks the radius by at most one halving") {
    for (std::uint64_t seed : {1ull, 2ull}) {
      double d1 = stability_delta_search(K, vec2(2.0, 0.4), 0.1, 10, Norm::Euclidean,
                                         12, seed);
      double d2 = stability_delta_search(K, vec2(2.0, 0.4), 0.1, 10, Norm::Euclidean,
                                         24, seed);
      CHECK(d2 >= d1 / 2.0 - 1e-15);
    }
  }
}
