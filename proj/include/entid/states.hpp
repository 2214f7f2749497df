#pragma once

// State families: Bell and Bell-diagonal states, Weyl states, two-qubit and
// two-qutrit Werner-type states, the noisy three-qubit W state, and seeded
// random states.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "entid/eigen.hpp"
#include "entid/matrix.hpp"
#include "entid/random.hpp"

namespace entid {

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

/// |Phi+-> = (|00> +- |11>)/sqrt2, |Psi+-> = (|01> +- |10>)/sqrt2.
inline ComplexVector bell_vector(BellKind kind) {
  const double h = 1.0 / std::numbers::sqrt2;
  switch (kind) {
    case BellKind::PhiPlus: return {h, 0.0, 0.0, h};
    case BellKind::PhiMinus: return {h, 0.0, 0.0, -h};
    case BellKind::PsiPlus: return {0.0, h, h, 0.0};
    case BellKind::PsiMinus: return {0.0, h, -h, 0.0};
  }
  throw Error("bell_vector: unknown kind");
}

inline ComplexMatrix bell_state(BellKind kind) { return ComplexMatrix::projector(bell_vector(kind)); }

inline ComplexMatrix singlet() { return bell_state(BellKind::PsiMinus); }

inline ComplexMatrix maximally_mixed(std::size_t d) {
  return ComplexMatrix::identity(d) * (1.0 / static_cast<double>(d));
}

namespace detail {
inline void require_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) throw Error(std::string(what) + ": v must lie in [0, 1]");
}
inline void require_psd(const ComplexMatrix& rho, const char* what) {
  const double m = min_eigenvalue(rho);
  if (m < -1e-10) {
    throw Error(std::string(what) + ": parameters give a non-positive operator (min eigenvalue " +
                std::to_string(m) + ")");
  }
}
}  // namespace detail

/// a|Phi+><Phi+| + b|Phi-><Phi-| + (1-a-b) I/4 on the triangle a, b >= 0, a + b <= 1.
inline ComplexMatrix bell_diagonal(double a, double b) {
  constexpr double slack = 1e-12;
  if (a < -slack || b < -slack || a + b > 1.0 + slack) {
    throw Error("bell_diagonal: (a, b) outside the triangle a, b >= 0, a + b <= 1");
  }
  return a * bell_state(BellKind::PhiPlus) + b * bell_state(BellKind::PhiMinus) +
         maximally_mixed(4) * (1.0 - a - b);
}

/// Two-qubit state with correlation tensor diag(p, q, r) and no local terms.
inline ComplexMatrix weyl_state(double p, double q, double r) {
  using namespace pauli;
  ComplexMatrix rho = ComplexMatrix::identity(4) + p * kron(x(), x()) + q * kron(y(), y()) +
                      r * kron(z(), z());
  rho *= 0.25;
  detail::require_psd(rho, "weyl_state");
  return rho;
}

/// v|Phi+><Phi+| + (1-v) I/4.
inline ComplexMatrix werner(double v) {
  detail::require_unit_interval(v, "werner");
  return v * bell_state(BellKind::PhiPlus) + maximally_mixed(4) * (1.0 - v);
}

inline ComplexVector qutrit_psi(double alpha, double beta) {
  ComplexVector psi(9);
  psi[0] = std::sin(alpha) * std::cos(beta);
  psi[4] = std::sin(alpha) * std::sin(beta);
  psi[8] = std::cos(alpha);
  return psi;
}

/// v|psi(alpha, beta)><psi| + (1-v) I/9, with
/// psi = sin a cos b |00> + sin a sin b |11> + cos a |22>.
inline ComplexMatrix qutrit_werner(double v, double alpha, double beta = std::numbers::pi / 4) {
  detail::require_unit_interval(v, "qutrit_werner");
  ComplexMatrix rho = v * ComplexMatrix::projector(qutrit_psi(alpha, beta)) +
                      maximally_mixed(9) * (1.0 - v);
  detail::require_psd(rho, "qutrit_werner");
  return rho;
}

inline ComplexVector w_vector() {
  const double s = 1.0 / std::sqrt(3.0);
  ComplexVector w(8);
  w[1] = s;  // |001>
  w[2] = s;  // |010>
  w[4] = s;  // |100>
  return w;
}

/// v|W><W| + (1-v) I/8 on three qubits.
inline ComplexMatrix w_noise(double v) {
  detail::require_unit_interval(v, "w_noise");
  return v * ComplexMatrix::projector(w_vector()) + maximally_mixed(8) * (1.0 - v);
}

/// Ginibre ensemble: G G^dagger / Tr, G complex Gaussian.
inline ComplexMatrix random_state(std::size_t d, std::uint64_t seed) {
  if (d < 2) throw Error("random_state: d must be at least 2");
  Rng rng(seed);
  ComplexMatrix g(d);
  for (auto& x : g.data()) x = complex_gaussian(rng);
  ComplexMatrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return rho.hermitian_part();
}

inline ComplexMatrix random_pure(std::size_t d, std::uint64_t seed) {
  if (d < 2) throw Error("random_pure: d must be at least 2");
  Rng rng(seed);
  return ComplexMatrix::projector(random_unit_vector(d, rng));
}

/// Convex mixture of `terms` random pure product states.
inline ComplexMatrix random_separable(Dims dims, std::size_t terms, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ComplexMatrix rho(dims.total());
  double total = 0.0;
  for (std::size_t t = 0; t < terms; ++t) {
    const double w = u(rng) + 1e-3;
    const auto x = random_unit_vector(dims.a, rng);
    const auto y = random_unit_vector(dims.b, rng);
    rho += w * ComplexMatrix::projector(kron(x, y));
    total += w;
  }
  rho *= 1.0 / total;
  return rho;
}

}  // namespace entid
