#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "svkit/hyperspace.hpp"
#include "svkit/rng.hpp"
#include "test_util.hpp"

using namespace svkit;
using namespace svkit::testutil;

namespace {
const Norm kAllNorms[] = {Norm::Euclidean, Norm::L1, Norm::Linf};
const double kGrid[] = {0.0, 0.25, 0.5, 0.75, 1.0};
}

TEST_CASE("segment reparametrization identity on random pairs") {
  Rng rng(31);
  for (int rep = 0; rep < 8; ++rep) {
    int dim = (rep % 2) ? 3 : 2;
    auto A = random_polytope(dim, 7, rng);
    auto B = random_polytope(dim, 7, rng);
    for (Norm n : kAllNorms) {
      double hab = hausdorff(A, B, n);
      for (double l : kGrid)
        for (double m : kGrid) {
          auto Sl = segment_point(A, B, l);
          auto Sm = segment_point(A, B, m);
          CHECK(std::abs(hausdorff(Sl, Sm, n) - std::abs(l - m) * hab) < 1e-9);
        }
    }
  }
}

TEST_CASE("nested reparametrization equals the flattened blend") {
  Rng rng(37);
  for (int rep = 0; rep < 6; ++rep) {
    auto A = random_polytope(2, 6, rng);
    auto B = random_polytope(2, 6, rng);
    double lam = rng.uniform(), mu = rng.uniform();
    auto nested = segment_point(A, segment_point(A, B, mu), lam);
    auto flat = segment_point(A, B, lam + (1 - lam) * mu);
    CHECK(hull_equal(nested, flat, 1e-9));
  }
}

TEST_CASE("subsegment closure") {
  Rng rng(41);
  for (int rep = 0; rep < 5; ++rep) {
    auto A = random_polytope(2, 6, rng);
    auto B = random_polytope(2, 6, rng);
    double l1 = rng.uniform(), l2 = rng.uniform(), t = rng.uniform();
    auto inner = segment_point(segment_point(A, B, l1), segment_point(A, B, l2), t);
    auto direct = segment_point(A, B, t * l1 + (1 - t) * l2);
    CHECK(hull_equal(inner, direct, 1e-9));
  }
}

TEST_CASE("geodesic certificate") {
  Rng rng(43);
  SUBCASE("degenerate pair has zero residuals") {
    auto A = random_polytope(2, 6, rng);
    auto cert = certify_geodesic(A, A, kGrid, Norm::Euclidean);
    CHECK(cert.max_endpoint_residual <= 1e-12);
    CHECK(cert.max_reparam_residual <= 1e-12);
    CHECK(cert.pass());
  }
  SUBCASE("random pairs pass at 1e-9 with an 11 point grid") {
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
    for (int rep = 0; rep < 4; ++rep) {
      auto A = random_polytope(2, 7, rng);
      auto B = random_polytope(2, 7, rng);
      for (Norm n : kAllNorms) {
        auto cert = certify_geodesic(A, B, grid, n);
        CHECK(cert.max_endpoint_residual <= 1e-9);
        CHECK(cert.max_reparam_residual <= 1e-9);
        CHECK(cert.pass());
      }
    }
  }
  SUBCASE("hyperbolicity slack is nonpositive on random triples") {
    for (int rep = 0; rep < 20; ++rep) {
      int dim = (rep % 2) ? 3 : 2;
      auto A = random_polytope(dim, 6, rng);
      auto B = random_polytope(dim, 6, rng);
      auto C = random_polytope(dim, 6, rng);
      for (Norm n : kAllNorms) {
        auto cert = certify_geodesic(A, B, kGrid, n, &C);
        REQUIRE(cert.max_hyperbolicity_violation.has_value());
        CHECK(*cert.max_hyperbolicity_violation <= 1e-9);
      }
    }
  }
}

TEST_CASE("the compact counterexample is exact") {
  auto ce = compact_counterexample();
  CHECK(ce.h_ab == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(ce.h_mid_a == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(ce.midpoint_set.count() == 3);
  // quantified failure of the midpoint property
  CHECK(std::abs(ce.h_mid_a - 0.5 * ce.h_ab) > 0.4);
  // the same data as a point-set geodesic certificate fails loudly
  auto cert = certify_geodesic(ce.A, ce.B, kGrid, Norm::Euclidean);
  CHECK_FALSE(cert.pass());
}

TEST_CASE("porosity witness on the square with singleton core") {
  auto C = square();
  auto K = ConvexPolytope::singleton(vec2(0, 0));
  auto w = porosity_witness(C, K, 1.0);
  CHECK(norm_of(w.z, Norm::Euclidean) == doctest::Approx(0.75).epsilon(1e-10));
  // z sits on a diagonal of the square
  CHECK(std::abs(std::abs(w.z[0]) - std::abs(w.z[1])) < 1e-9);
  CHECK(w.h_K_Kprime == doctest::Approx(0.75).epsilon(1e-10));
  CHECK(w.midpoint_gap == doctest::Approx(0.375).epsilon(1e-10));
  CHECK(w.midpoint_gap > w.alpha * w.eps);
}

TEST_CASE("porosity witness invariants on random instances") {
  Rng rng(53);
  for (int rep = 0; rep < 10; ++rep) {
    int dim = (rep % 2) ? 3 : 2;
    auto C = random_polytope(dim, 8, rng, 1.0);
    Vec center = deep_interior_point(C);
    auto K = C.scaled_about(center, 0.3);
    for (Norm n : kAllNorms) {
      double eps0 = 0.0;
      for (int i = 0; i < C.count(); ++i)
        eps0 = std::max(eps0, distance_to(K, C.vertex(i), n));
      double eps = 0.6 * eps0;
      auto w = porosity_witness(C, K, eps, n);
      CHECK(std::abs(w.h_K_Kprime - 0.75 * eps) < 1e-9);
      CHECK(std::abs(w.midpoint_gap - 0.375 * eps) < 1e-9);
      CHECK(w.midpoint_gap > w.alpha * eps);
      CHECK(std::abs(distance_to(K, w.z, n) - 0.75 * eps) < 1e-9);
      CHECK(contains(C, w.z, 1e-9));
    }
  }
}

TEST_CASE("porosity witness stays local as eps shrinks") {
  auto C = square();
  auto K = ConvexPolytope::singleton(vec2(0, 0));
  double prev = 1e300;
  for (double eps : {0.5, 0.05, 0.005, 0.0005}) {
    auto w = porosity_witness(C, K, eps);
    CHECK(w.h_K_Kprime < prev);
    CHECK(w.h_K_Kprime == doctest::Approx(0.75 * eps).epsilon(1e-8));
    prev = w.h_K_Kprime;
  }
}

TEST_CASE("porosity witness rejects bad input") {
  auto C = square();
  auto K = ConvexPolytope::singleton(vec2(0, 0));
  CHECK_THROWS_AS(porosity_witness(C, K, 10.0), std::invalid_argument);   // eps >= eps0
  CHECK_THROWS_AS(porosity_witness(C, C, 0.5), std::invalid_argument);    // K = C
  auto big = square(3.0);
  CHECK_THROWS_AS(porosity_witness(C, big, 0.5), std::invalid_argument);  // K not in C
}
