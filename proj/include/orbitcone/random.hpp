#pragma once

#include <cstdint>
#include <random>

#include "orbitcone/lie_algebra.hpp"

namespace orbitcone {

using Rng = std::mt19937_64;

inline Vec gaussian_vector(Rng& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = g(rng);
  return v;
}

inline Vec random_unit_vector(Rng& rng, int n) {
  Vec v = gaussian_vector(rng, n);
  while (v.norm() < 1e-12) v = gaussian_vector(rng, n);
  return v / v.norm();
}

inline double uniform(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  return u(rng);
}

/// Derives an independent stream seed from a base seed and a task index.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Matrix of Ad*(g) for g a product of `steps` one-parameter factors
/// exp(s e_k), with k uniform over the basis and s ~ U(-scale, scale).
Mat random_group_element(const MatrixLieAlgebra& L, Rng& rng, int steps, double scale = 1.0);

/// Matrix of Ad*(k1 exp(scale * Y) k2) with k1, k2 = exp of Gaussian
/// elements of k (coefficients of standard deviation pi) and Y a random unit
/// element of p. Requires a theta-stable decomposition.
Mat random_kak_element(const MatrixLieAlgebra& L, const CartanDecomposition& cd, Rng& rng, double scale);

}  // namespace orbitcone
