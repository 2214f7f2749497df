#pragma once

// Functional entanglement identifier
//
//   omega_G(rho) = max_{product sigma} Tr(sigma G[rho]) - Tr(rho G[rho]),
//
// negative only for entangled states.

#include <cmath>
#include <optional>
#include <string>

#include "entid/bases.hpp"
#include "entid/gmap.hpp"
#include "entid/matrix.hpp"
#include "entid/product_max.hpp"

namespace entid {

/// omega below -kDetectionTolerance counts as detection.
inline constexpr double kDetectionTolerance = 1e-9;

struct IdentifierResult {
  double omega_tilde0 = 0.0;
  double self_overlap = 0.0;
  double omega = 0.0;
  bool detected = false;
  ComplexVector x;
  ComplexVector y;
};

/// Verdict and diagnostics of one criterion on one state.
struct DetectionReport {
  std::string criterion;
  bool detected = false;
  std::optional<double> omega;
  std::optional<double> omega_tilde0;
  std::optional<double> self_overlap;
  std::optional<double> map_min_eig;
  std::optional<double> ppt_min_eig;
  /// Criterion-specific comparison: detection when lhs < rhs.
  std::optional<double> lhs;
  std::optional<double> rhs;
  /// Scope of the verdict, e.g. the cut for three-qubit criteria.
  std::string scope;
  double wall_seconds = 0.0;
};

/// Identifier for an already evaluated operator G[rho]; shared by the
/// bipartite and the cut-wise three-qubit identifiers.
inline IdentifierResult identifier_from_operator(const ComplexMatrix& g_rho, const ComplexMatrix& rho,
                                                 Dims dims, const ProductMaxOptions& opts = {}) {
  const auto pm = product_max(g_rho, dims, opts);
  IdentifierResult r;
  r.omega_tilde0 = pm.value;
  r.self_overlap = trace_product(rho, g_rho).real();
  r.omega = r.omega_tilde0 - r.self_overlap;
  r.detected = r.omega < -kDetectionTolerance;
  r.x = pm.x;
  r.y = pm.y;
  return r;
}

inline IdentifierResult identifier_value(const GMap& g, const ComplexMatrix& rho,
                                         const ProductMaxOptions& opts = {}) {
  return identifier_from_operator(apply_gmap(g, rho), rho, g.dims(), opts);
}

/// Sign criterion: lhs = max over product states of sum_ij X_i Y_j sgn(T_ij)
/// (= 4 omega~0), rhs = sum_{i,j>=1} |T_ij|; detection when lhs < rhs.
inline DetectionReport sign_criterion(const ComplexMatrix& rho, Dims dims,
                                      const ProductMaxOptions& opts = {}) {
  const GMap g = sign_gmap(dims);
  const auto id = identifier_value(g, rho, opts);
  const auto t = correlation_tensor(rho, g.basis().a(), g.basis().b());
  double manhattan = 0.0;
  for (std::size_t i = 1; i < t.shape[0]; ++i)
    for (std::size_t j = 1; j < t.shape[1]; ++j) manhattan += std::abs(t(i, j));

  DetectionReport r;
  r.criterion = "sign";
  r.detected = id.detected;
  r.omega = id.omega;
  r.omega_tilde0 = id.omega_tilde0;
  r.self_overlap = id.self_overlap;
  r.lhs = 4.0 * id.omega_tilde0;
  r.rhs = manhattan;
  return r;
}

/// a + b + 2ab - 3(a^2 + b^2); negative exactly where the standard metric
/// detects the Bell-diagonal state (a, b).
inline double bell_diagonal_boundary(double a, double b) {
  return a + b + 2.0 * a * b - 3.0 * (a * a + b * b);
}

/// p^2 + q^2 + r^2 - max(|p|, |q|, |r|) for Weyl states. The standard-metric
/// identifier equals minus a quarter of this, so detection is where it is POSITIVE.
inline double weyl_condition(double p, double q, double r) {
  return p * p + q * q + r * r - std::max({std::abs(p), std::abs(q), std::abs(r)});
}

}  // namespace entid
