#pragma once

// Maximization of <x (x) y| M |x (x) y> over pure product vectors.
//
// product_max alternates top-eigenvector updates on each side; every half
// step solves its subproblem exactly, so the objective never decreases.
// product_max_oracle is an independent brute-force route: a grid (or random
// sample) on one side and a closed-form 2x2 / 3x3 top eigenvalue on the other.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "entid/eigen.hpp"
#include "entid/matrix.hpp"
#include "entid/random.hpp"

namespace entid {

struct ProductMaxOptions {
  int restarts = 20;
  double tol = 1e-10;
  int max_iterations = 500;
  std::uint64_t seed = 20170801;
};

struct ProductMaxResult {
  double value = -std::numeric_limits<double>::infinity();
  ComplexVector x;
  ComplexVector y;
  int iterations = 0;
  /// Most negative change of the objective between consecutive half steps
  /// over all restarts; a nonnegative value (up to rounding) certifies ascent.
  double worst_step = 0.0;
};

/// Tr_B[M (I (x) |y><y|)]
inline ComplexMatrix reduce_on_b(const ComplexMatrix& m, Dims dims, std::span<const Complex> y) {
  const std::size_t da = dims.a;
  const std::size_t db = dims.b;
  ComplexMatrix r(da);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      Complex s{};
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) s += std::conj(y[k]) * m(i * db + k, j * db + l) * y[l];
      r(i, j) = s;
    }
  return r;
}

/// Tr_A[M (|x><x| (x) I)]
inline ComplexMatrix reduce_on_a(const ComplexMatrix& m, Dims dims, std::span<const Complex> x) {
  const std::size_t da = dims.a;
  const std::size_t db = dims.b;
  ComplexMatrix r(db);
  for (std::size_t k = 0; k < db; ++k)
    for (std::size_t l = 0; l < db; ++l) {
      Complex s{};
      for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j) s += std::conj(x[i]) * m(i * db + k, j * db + l) * x[j];
      r(k, l) = s;
    }
  return r;
}

inline ProductMaxResult product_max(const ComplexMatrix& m, Dims dims,
                                    const ProductMaxOptions& opts = {}) {
  detail::check_bipartite(m, dims, "product_max");
  if (!m.is_hermitian()) throw Error("product_max: operator is not Hermitian");
  if (opts.restarts < 1) throw Error("product_max: need at least one restart");
  const ComplexMatrix h = m.hermitian_part();

  ProductMaxResult best;
  for (int r = 0; r < opts.restarts; ++r) {
    Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(r)));
    ComplexVector y = random_unit_vector(dims.b, rng);
    ComplexVector x;
    double prev_half = expectation(reduce_on_b(h, dims, y), random_unit_vector(dims.a, rng)).real();
    double prev_full = -std::numeric_limits<double>::infinity();
    double value = prev_half;
    int it = 0;
    for (; it < opts.max_iterations; ++it) {
      const auto spec_a = hermitian_eig(reduce_on_b(h, dims, y));
      x = spec_a.eigenvector(dims.a - 1);
      best.worst_step = std::min(best.worst_step, spec_a.max() - prev_half);
      prev_half = spec_a.max();

      const auto spec_b = hermitian_eig(reduce_on_a(h, dims, x));
      y = spec_b.eigenvector(dims.b - 1);
      best.worst_step = std::min(best.worst_step, spec_b.max() - prev_half);
      prev_half = spec_b.max();

      value = spec_b.max();
      if (std::abs(value - prev_full) < opts.tol) break;
      prev_full = value;
    }
    best.iterations += it + 1;
    if (value > best.value) {
      best.value = value;
      best.x = x;
      best.y = y;
    }
  }
  return best;
}

namespace detail {

inline double top_eigenvalue_2x2(const ComplexMatrix& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double half = 0.5 * (a - d);
  return 0.5 * (a + d) + std::sqrt(half * half + std::norm(m(0, 1)));
}

// Trigonometric solution of the characteristic cubic.
inline double top_eigenvalue_3x3(const ComplexMatrix& m) {
  const double a11 = m(0, 0).real();
  const double a22 = m(1, 1).real();
  const double a33 = m(2, 2).real();
  const double p1 = std::norm(m(0, 1)) + std::norm(m(0, 2)) + std::norm(m(1, 2));
  const double q = (a11 + a22 + a33) / 3.0;
  const double p2 = (a11 - q) * (a11 - q) + (a22 - q) * (a22 - q) + (a33 - q) * (a33 - q) + 2.0 * p1;
  if (p2 <= 0.0) return q;
  const double p = std::sqrt(p2 / 6.0);
  ComplexMatrix b = m;
  for (std::size_t i = 0; i < 3; ++i) b(i, i) -= q;
  b *= 1.0 / p;
  const Complex det = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
                      b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
                      b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
  const double r = std::clamp(0.5 * det.real(), -1.0, 1.0);
  return q + 2.0 * p * std::cos(std::acos(r) / 3.0);
}

inline double top_eigenvalue_small(const ComplexMatrix& m) {
  if (m.dim() == 2) return top_eigenvalue_2x2(m);
  if (m.dim() == 3) return top_eigenvalue_3x3(m);
  throw Error("top_eigenvalue_small: only 2x2 and 3x3 are supported");
}

inline ComplexVector bloch_vector_state(double theta, double phi) {
  return {std::cos(0.5 * theta), std::polar(std::sin(0.5 * theta), phi)};
}

}  // namespace detail

struct OracleOptions {
  /// Polar-angle resolution on a qubit side; the azimuth uses 2 * grid points.
  int grid = 120;
  /// Random vectors on a qutrit side when neither side is a qubit.
  int samples = 200000;
  /// Best samples refined by a shrinking-radius random search afterwards.
  int polish = 4;
  std::uint64_t seed = 7;
};

inline double product_max_oracle(const ComplexMatrix& m, Dims dims, OracleOptions opts = {}) {
  detail::check_bipartite(m, dims, "product_max_oracle");
  const auto supported = [](std::size_t d) { return d == 2 || d == 3; };
  if (!supported(dims.a) || !supported(dims.b)) {
    throw Error("product_max_oracle: local dimensions must be 2 or 3");
  }
  if (opts.grid < 2) throw Error("product_max_oracle: grid must be at least 2");
  const ComplexMatrix h = m.hermitian_part();
  double best = -std::numeric_limits<double>::infinity();

  const bool grid_on_a = dims.a == 2;
  const bool grid_on_b = !grid_on_a && dims.b == 2;
  if (grid_on_a || grid_on_b) {
    const int n_theta = opts.grid;
    const int n_phi = 2 * opts.grid;
    for (int i = 0; i < n_theta; ++i) {
      const double theta = std::numbers::pi * i / (n_theta - 1);
      for (int j = 0; j < n_phi; ++j) {
        const double phi = 2.0 * std::numbers::pi * j / n_phi;
        const auto v = detail::bloch_vector_state(theta, phi);
        const ComplexMatrix other = grid_on_a ? reduce_on_a(h, dims, v) : reduce_on_b(h, dims, v);
        best = std::max(best, detail::top_eigenvalue_small(other));
        if (i == 0 || i == n_theta - 1) break;  // poles
      }
    }
    return best;
  }

  Rng rng(opts.seed);
  const auto objective = [&](const ComplexVector& x) {
    return detail::top_eigenvalue_small(reduce_on_a(h, dims, x));
  };
  std::vector<std::pair<double, ComplexVector>> top;
  const auto keep = static_cast<std::size_t>(std::max(1, opts.polish));
  for (int s = 0; s < opts.samples; ++s) {
    auto x = random_unit_vector(dims.a, rng);
    const double f = objective(x);
    if (top.size() < keep || f > top.back().first) {
      top.emplace_back(f, std::move(x));
      std::sort(top.begin(), top.end(), [](const auto& l, const auto& r) { return l.first > r.first; });
      if (top.size() > keep) top.pop_back();
    }
  }
  if (opts.polish <= 0) return top.front().first;

  std::normal_distribution<double> n(0.0, 1.0);
  for (auto& [f, x] : top) {
    double radius = 0.1;
    int misses = 0;
    while (radius > 1e-7) {
      ComplexVector trial = x;
      for (auto& c : trial) c += radius * Complex(n(rng), n(rng));
      const double nt = norm(trial);
      for (auto& c : trial) c /= nt;
      const double ft = objective(trial);
      if (ft > f) {
        f = ft;
        x = std::move(trial);
        misses = 0;
      } else if (++misses == 30) {
        radius *= 0.5;
        misses = 0;
      }
    }
    best = std::max(best, f);
  }
  return best;
}

}  // namespace entid
