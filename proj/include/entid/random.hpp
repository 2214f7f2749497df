#pragma once

#include <cstdint>
#include <random>

#include "entid/matrix.hpp"

namespace entid {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; maps (master, stream) to an independent seed.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline Complex complex_gaussian(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

/// Haar-distributed unit vector.
inline ComplexVector random_unit_vector(std::size_t d, Rng& rng) {
  ComplexVector v(d);
  for (auto& x : v) x = complex_gaussian(rng);
  const double nv = norm(v);
  for (auto& x : v) x /= nv;
  return v;
}

/// Hermitian matrix with Gaussian entries (GUE-like, not normalized).
inline ComplexMatrix random_hermitian(std::size_t d, Rng& rng) {
  ComplexMatrix g(d);
  for (auto& x : g.data()) x = complex_gaussian(rng);
  return g.hermitian_part();
}

}  // namespace entid
