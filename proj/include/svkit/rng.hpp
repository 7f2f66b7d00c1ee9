#pragma once

#include <cmath>
#include <cstdint>

#include "svkit/norms.hpp"

namespace svkit {

/// splitmix64 generator. Every sampled quantity in the library goes through
/// this class so results are bit-identical across platforms and standard
/// library versions; std:: distributions are implementation-defined and would
/// break byte-reproducibility of certificates.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Standard normal via Box-Muller; consumes exactly two uniforms.
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  Vec normal_vec(int d) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = normal();
    return v;
  }

  /// Uniformly distributed point of the Euclidean unit sphere.
  Vec unit_vector(int d) {
    for (;;) {
      Vec v = normal_vec(d);
      double n = v.norm();
      if (n > 1e-12) return v / n;
    }
  }

  /// A point of the closed ball of the given radius in the given norm.
  Vec ball_vector(int d, double radius, Norm n) {
    switch (n) {
      case Norm::Linf: {
        Vec v(d);
        for (int i = 0; i < d; ++i) v[i] = uniform(-radius, radius);
        return v;
      }
      case Norm::Euclidean: {
        Vec v = unit_vector(d);
        double r = radius * std::pow(uniform(), 1.0 / d);
        return r * v;
      }
      case Norm::L1: {
        // exponential magnitudes with random signs, normalised to the sphere,
        // then scaled inward; gives full coverage of the cross-polytope.
        Vec v(d);
        double s = 0.0;
        for (int i = 0; i < d; ++i) {
          double e = -std::log(1.0 - uniform());
          v[i] = (next_u64() & 1ull) ? e : -e;
          s += e;
        }
        if (s < 1e-300) s = 1e-300;
        double r = radius * std::pow(uniform(), 1.0 / d);
        return v * (r / s);
      }
    }
    return Vec::Zero(d);
  }

  /// Positive weights summing to one (flat Dirichlet).
  Vec simplex_weights(int k) {
    Vec w(k);
    double s = 0.0;
    for (int i = 0; i < k; ++i) {
      double e = -std::log(1.0 - uniform());
      if (e < 1e-300) e = 1e-300;
      w[i] = e;
      s += e;
    }
    return w / s;
  }

  /// Deterministic combination of seeds for derived streams.
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

}  // namespace svkit
