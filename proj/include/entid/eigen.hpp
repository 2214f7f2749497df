#pragma once

// Cyclic Jacobi eigensolver for small complex Hermitian matrices.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "entid/matrix.hpp"

namespace entid {

struct HermitianSpectrum {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // column k belongs to eigenvalues[k]

  [[nodiscard]] ComplexVector eigenvector(std::size_t k) const {
    ComplexVector v(eigenvectors.dim());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = eigenvectors(i, k);
    return v;
  }
  [[nodiscard]] double min() const { return eigenvalues.front(); }
  [[nodiscard]] double max() const { return eigenvalues.back(); }
};

struct JacobiOptions {
  double off_tolerance = 1e-13;
  int max_sweeps = 100;
};

inline HermitianSpectrum hermitian_eig(const ComplexMatrix& m, JacobiOptions opts = {}) {
  if (m.empty()) throw Error("hermitian_eig: empty matrix");
  if (!m.is_hermitian()) {
    throw Error("hermitian_eig: input is not Hermitian (defect " +
                std::to_string(m.hermiticity_defect()) + ")");
  }
  const std::size_t n = m.dim();
  ComplexMatrix a = m.hermitian_part();
  ComplexMatrix v = ComplexMatrix::identity(n);

  double frob = 0.0;
  for (const auto& x : a.data()) frob += std::norm(x);
  const double threshold = opts.off_tolerance * std::max(1.0, std::sqrt(frob));

  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q)
        if (p != q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= threshold) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const Complex phase = std::conj(apq / r);  // e^{-i arg(apq)}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double zeta = (aqq - app) / (2.0 * r);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // U = diag(1, phase) * [[c, s], [-s, c]] restricted to (p, q).
        const Complex upp = c;
        const Complex upq = s;
        const Complex uqp = -s * phase;
        const Complex uqq = c * phase;

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();

        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * upp + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  HermitianSpectrum out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

inline std::vector<double> eigenvalues(const ComplexMatrix& m) { return hermitian_eig(m).eigenvalues; }

inline double min_eigenvalue(const ComplexMatrix& m) { return hermitian_eig(m).min(); }

/// Unit eigenvector of the largest eigenvalue.
inline ComplexVector top_eigenvector(const ComplexMatrix& m) {
  const auto spec = hermitian_eig(m);
  return spec.eigenvector(spec.eigenvalues.size() - 1);
}

/// Negativity verdict with the scale-aware threshold used across the library.
inline bool is_negative(double min_eig, const ComplexMatrix& m) {
  return min_eig < -kNegativityTolerance * std::max(1.0, m.max_abs());
}

}  // namespace entid
