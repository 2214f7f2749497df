#pragma once

// Witness operators W = omega~0 I - G[rho] and the positive maps they induce
// through the Choi-Jamiolkowski correspondence.
//
// With w_ij = Tr(W s_i^A (x) s_j^B):
//   Lambda  [l] = 1/4 sum_ij w_ij Tr(s_i^A l) s_j^B  = Tr_A[W (l (x) I)]   (A -> B)
//   Lambda^d[l] = 1/4 sum_ij w_ij Tr(s_j^B l) s_i^A  = Tr_B[W (I (x) l)]   (B -> A)
// The contraction forms are what the library evaluates; the coefficient sums
// are kept as an independent route for the property checks.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "entid/bases.hpp"
#include "entid/eigen.hpp"
#include "entid/gmap.hpp"
#include "entid/identifier.hpp"
#include "entid/matrix.hpp"
#include "entid/random.hpp"

namespace entid {

struct WitnessOperator {
  ComplexMatrix matrix;
  double omega_tilde0 = 0.0;
  Dims dims;
  std::string source;
};

inline WitnessOperator witness_from_operator(const ComplexMatrix& g_rho, double omega_tilde0, Dims dims,
                                             std::string source = {}) {
  detail::check_bipartite(g_rho, dims, "witness_from_operator");
  return {ComplexMatrix::identity(dims.total()) * omega_tilde0 - g_rho, omega_tilde0, dims,
          std::move(source)};
}

inline WitnessOperator witness_operator(const GMap& g, const ComplexMatrix& rho,
                                        const ProductMaxOptions& opts = {}) {
  const ComplexMatrix g_rho = apply_gmap(g, rho);
  const auto pm = product_max(g_rho, g.dims(), opts);
  return witness_from_operator(g_rho, pm.value, g.dims(), g.name());
}

/// w_ij = Tr(W s_i^A (x) s_j^B); W = 1/4 sum_ij w_ij s_i (x) s_j.
inline RealTensor witness_coefficients(const WitnessOperator& w, const HermitianBasis& basis_a,
                                       const HermitianBasis& basis_b) {
  return correlation_tensor(w.matrix, basis_a, basis_b);
}

/// Tr_B[W (I (x) l)], a map from operators on B to operators on A.
inline ComplexMatrix lambda_dual_apply(const WitnessOperator& w, const ComplexMatrix& l) {
  const std::size_t da = w.dims.a;
  const std::size_t db = w.dims.b;
  if (l.dim() != db) throw Error("lambda_dual_apply: argument must act on subsystem B");
  ComplexMatrix out(da);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      Complex s{};
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t m = 0; m < db; ++m) s += w.matrix(i * db + k, j * db + m) * l(m, k);
      out(i, j) = s;
    }
  return out;
}

/// Tr_A[W (l (x) I)], a map from operators on A to operators on B.
inline ComplexMatrix lambda_apply(const WitnessOperator& w, const ComplexMatrix& l) {
  const std::size_t da = w.dims.a;
  const std::size_t db = w.dims.b;
  if (l.dim() != da) throw Error("lambda_apply: argument must act on subsystem A");
  ComplexMatrix out(db);
  for (std::size_t k = 0; k < db; ++k)
    for (std::size_t m = 0; m < db; ++m) {
      Complex s{};
      for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j) s += w.matrix(i * db + k, j * db + m) * l(j, i);
      out(k, m) = s;
    }
  return out;
}

/// 1/4 sum_ij w_ij Tr(s_j^B l) s_i^A
inline ComplexMatrix lambda_dual_from_coefficients(const RealTensor& w, const HermitianBasis& basis_a,
                                                   const HermitianBasis& basis_b,
                                                   const ComplexMatrix& l) {
  ComplexMatrix out(basis_a.dim());
  for (std::size_t j = 0; j < basis_b.size(); ++j) {
    const Complex tj = trace_product(basis_b[j], l);
    for (std::size_t i = 0; i < basis_a.size(); ++i) out += (0.25 * w(i, j) * tj) * basis_a[i];
  }
  return out;
}

/// 1/4 sum_ij w_ij Tr(s_i^A l) s_j^B
inline ComplexMatrix lambda_from_coefficients(const RealTensor& w, const HermitianBasis& basis_a,
                                              const HermitianBasis& basis_b, const ComplexMatrix& l) {
  ComplexMatrix out(basis_b.dim());
  for (std::size_t i = 0; i < basis_a.size(); ++i) {
    const Complex ti = trace_product(basis_a[i], l);
    for (std::size_t j = 0; j < basis_b.size(); ++j) out += (0.25 * w(i, j) * ti) * basis_b[j];
  }
  return out;
}

struct SpectrumVerdict {
  std::vector<double> eigenvalues;
  double min_eig = 0.0;
  bool detected = false;
};

inline SpectrumVerdict spectrum_verdict(const ComplexMatrix& m) {
  SpectrumVerdict v;
  v.eigenvalues = hermitian_eig(m.hermitian_part()).eigenvalues;
  v.min_eig = v.eigenvalues.front();
  v.detected = is_negative(v.min_eig, m);
  return v;
}

/// (1 (x) T o Lambda^d)[target]. The B factor of the target is expanded over
/// the Gell-Mann basis, each component is mapped, and the result is transposed
/// on the mapped factor. Output acts on C^{dA_target} (x) C^{dA_witness}.
inline ComplexMatrix apply_map_condition_operator(const WitnessOperator& w, const ComplexMatrix& target,
                                                  Dims target_dims) {
  detail::check_bipartite(target, target_dims, "map_condition");
  if (target_dims.b != w.dims.b) {
    throw Error("map_condition: target subsystem B does not match the witness");
  }
  const auto basis_b = gell_mann_basis(target_dims.b);
  ComplexMatrix out(target_dims.a * w.dims.a);
  for (std::size_t m = 0; m < basis_b.size(); ++m) {
    // X_m = Tr_B[target (I (x) s_m)], so target = 1/2 sum_m X_m (x) s_m.
    ComplexMatrix x_m(target_dims.a);
    const std::size_t db = target_dims.b;
    for (std::size_t i = 0; i < target_dims.a; ++i)
      for (std::size_t j = 0; j < target_dims.a; ++j) {
        Complex s{};
        for (std::size_t k = 0; k < db; ++k)
          for (std::size_t l = 0; l < db; ++l) s += target(i * db + k, j * db + l) * basis_b[m](l, k);
        x_m(i, j) = s;
      }
    out += 0.5 * kron(x_m, lambda_dual_apply(w, basis_b[m]));
  }
  return partial_transpose(out, {target_dims.a, w.dims.a}, Subsystem::B);
}

inline SpectrumVerdict map_condition(const WitnessOperator& w, const ComplexMatrix& target,
                                     Dims target_dims) {
  return spectrum_verdict(apply_map_condition_operator(w, target, target_dims));
}

/// Witness built from (g, generator), map condition evaluated on target.
inline SpectrumVerdict map_condition(const GMap& g, const ComplexMatrix& generator,
                                     const ComplexMatrix& target, const ProductMaxOptions& opts = {}) {
  if (generator.dim() != target.dim()) throw Error("map_condition: generator and target dims differ");
  return map_condition(witness_operator(g, generator, opts), target, g.dims());
}

inline SpectrumVerdict ppt_check(const ComplexMatrix& rho, Dims dims) {
  return spectrum_verdict(partial_transpose(rho, dims, Subsystem::B));
}

/// sum_m t_m (x) t_m over the orthonormal t_m = s_m / sqrt2, i.e.
/// 1/2 sum_m s_m (x) s_m; its partial transpose is phi_plus(d).
inline ComplexMatrix max_entangled_operator(const HermitianBasis& basis) {
  ComplexMatrix out(basis.dim() * basis.dim());
  for (const auto& s : basis.elements()) out += kron(s, s);
  return 0.5 * out;
}

/// Unnormalized projector sum_ij |ii><jj|.
inline ComplexMatrix phi_plus(std::size_t d) {
  if (d < 2) throw Error("phi_plus: d must be at least 2");
  ComplexMatrix out(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out(i * d + i, j * d + j) = 1.0;
  return out;
}

/// max |W - (1 (x) Lambda)[1/2 sum_m s_m (x) s_m]| with Lambda assembled from
/// the coefficient sum over basis_a on both sides. Lambda is applied term by
/// term rather than through max_entangled_operator.
inline double isomorphism_check(const GMap& g, const ComplexMatrix& rho, const HermitianBasis& basis_a,
                                const ProductMaxOptions& opts = {}) {
  if (g.dims().a != g.dims().b) throw Error("isomorphism_check: requires equal local dimensions");
  if (basis_a.dim() != g.dims().a) throw Error("isomorphism_check: basis dimension mismatch");
  const auto w = witness_operator(g, rho, opts);
  const auto coeffs = witness_coefficients(w, basis_a, basis_a);
  ComplexMatrix rebuilt(w.matrix.dim());
  for (const auto& s : basis_a.elements())
    rebuilt += 0.5 * kron(s, lambda_from_coefficients(coeffs, basis_a, basis_a, s));
  return max_abs_diff(w.matrix, rebuilt);
}

/// Minimum of <x (x) y|W|x (x) y> over seeded random pure product vectors.
inline double block_positivity_sample(const WitnessOperator& w, int samples, std::uint64_t seed) {
  if (samples < 1) throw Error("block_positivity_sample: need at least one sample");
  Rng rng(seed);
  double worst = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    const auto x = random_unit_vector(w.dims.a, rng);
    const auto y = random_unit_vector(w.dims.b, rng);
    worst = std::min(worst, expectation(w.matrix, kron(x, y)).real());
  }
  return worst;
}

}  // namespace entid
