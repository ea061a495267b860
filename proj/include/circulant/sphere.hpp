#pragma once

#include "circulant/core.hpp"

#include <cstdint>
#include <random>

namespace circulant {

// Seed derivation is part of the reproducibility contract (see README):
// splitmix64 scrambling, dimension streams from seed XOR splitmix64(n),
// shard streams from a golden-ratio step on top of the dimension seed.

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t dimension_seed(std::uint64_t seed, Index n) {
  return seed ^ splitmix64(static_cast<std::uint64_t>(n));
}

inline std::uint64_t shard_seed(std::uint64_t dim_seed, std::uint64_t shard) {
  return splitmix64(dim_seed + (shard + 1) * 0x9E3779B97F4A7C15ULL);
}

/// Standard normal stream pinned for reproducibility: mt19937_64 bits mapped
/// to (0,1] by (x >> 11 + 1) * 2^-53, then an explicit Box-Muller transform.
/// Library normal distributions are unspecified and would not replay.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

  double uniform01() {  // (0, 1]
    return (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
  }

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u = uniform01();
    const double v = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double a = 2.0 * std::numbers::pi * v;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/// Uniform draw from the unit sphere in R^n: n independent normals scaled to
/// unit length, redrawing the measure-zero all-zero sample.
inline RealVector sample_sphere(Index n, GaussianStream& g) {
  if (n < 1) {
    throw std::invalid_argument("sample_sphere: n must be positive");
  }
  RealVector x(n);
  double norm = 0.0;
  do {
    for (Index i = 0; i < n; ++i) {
      x[i] = g.next();
    }
    norm = x.norm();
  } while (norm == 0.0);
  return x / norm;
}

/// Uniform draw from the unit sphere in C^n (2n normals as real and imaginary
/// parts, scaled to unit length).
inline ComplexVector sample_complex_sphere(Index n, GaussianStream& g) {
  if (n < 1) {
    throw std::invalid_argument("sample_complex_sphere: n must be positive");
  }
  ComplexVector x(n);
  double norm = 0.0;
  do {
    for (Index i = 0; i < n; ++i) {
      x[i] = Complex(g.next(), g.next());
    }
    norm = x.norm();
  } while (norm == 0.0);
  return x / norm;
}

}  // namespace circulant
