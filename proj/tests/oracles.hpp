#pragma once

// Independent reference computations used by the unit tests. Nothing here
// calls the library's eigensolver, optimizer or basis code.

#include <cmath>
#include <complex>
#include <vector>

#include "entid/matrix.hpp"

namespace oracle {

using entid::Complex;
using entid::ComplexMatrix;

/// Tr(M^k) for k = 1..n; equal power sums pin down the spectrum.
inline std::vector<double> power_sums(const ComplexMatrix& m) {
  std::vector<double> out;
  ComplexMatrix p = m;
  for (std::size_t k = 1; k <= m.dim(); ++k) {
    out.push_back(p.trace().real());
    p = p * m;
  }
  return out;
}

inline std::vector<double> power_sums(const std::vector<double>& eig) {
  std::vector<double> out;
  for (std::size_t k = 1; k <= eig.size(); ++k) {
    double s = 0.0;
    for (double x : eig) s += std::pow(x, static_cast<double>(k));
    out.push_back(s);
  }
  return out;
}

/// Entry-by-entry partial transpose on B written from the index definition.
inline ComplexMatrix partial_transpose_b(const ComplexMatrix& m, std::size_t da, std::size_t db) {
  ComplexMatrix out(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) out(i * db + k, j * db + l) = m(i * db + l, j * db + k);
  return out;
}

/// Pauli matrices written out by hand, index 0 = identity.
inline ComplexMatrix pauli(int i) {
  const Complex I(0, 1);
  switch (i) {
    case 0: return ComplexMatrix(2, {1, 0, 0, 1});
    case 1: return ComplexMatrix(2, {0, 1, 1, 0});
    case 2: return ComplexMatrix(2, {0, -I, I, 0});
    default: return ComplexMatrix(2, {1, 0, 0, -1});
  }
}

/// Tr(rho P_i (x) P_j) with explicit 4x4 products.
inline double pauli_correlation(const ComplexMatrix& rho, int i, int j) {
  const auto a = pauli(i);
  const auto b = pauli(j);
  Complex t{};
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) t += rho(r, c) * a(c / 2, r / 2) * b(c % 2, r % 2);
  return t.real();
}

/// max over unit Bloch vectors x, y of -sum_i c_i x_i y_i for diagonal
/// correlations c (closed form: max |c_i|).
inline double diagonal_product_max(double c1, double c2, double c3) {
  return std::max({std::abs(c1), std::abs(c2), std::abs(c3)});
}

}  // namespace oracle
