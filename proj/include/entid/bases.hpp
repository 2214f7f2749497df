#pragma once

// Hermitian operator bases normalized as Tr(s_i s_j) = 2 delta_ij, and the
// correlation tensors of states expanded over them:
//
//   rho = 1/4 sum_ij T_ij s_i (x) s_j,   T_ij = Tr(rho s_i (x) s_j).

#include <cmath>
#include <cstddef>
#include <memory>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "entid/matrix.hpp"

namespace entid {

class HermitianBasis {
 public:
  HermitianBasis() = default;
  /// Not validated; audit with max_gram_error().
  HermitianBasis(std::size_t d, std::vector<ComplexMatrix> elements)
      : d_(d), elements_(std::move(elements)) {
    if (elements_.size() != d * d) throw Error("HermitianBasis: expected d^2 elements");
    for (const auto& e : elements_)
      if (e.dim() != d) throw Error("HermitianBasis: element has wrong dimension");
  }

  [[nodiscard]] std::size_t dim() const { return d_; }
  [[nodiscard]] std::size_t size() const { return elements_.size(); }
  [[nodiscard]] const ComplexMatrix& operator[](std::size_t i) const { return elements_[i]; }
  [[nodiscard]] const std::vector<ComplexMatrix>& elements() const { return elements_; }

  /// max_ij |Tr(s_i s_j) - 2 delta_ij|
  [[nodiscard]] double max_gram_error() const {
    double err = 0.0;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) {
        const Complex g = trace_product(elements_[i], elements_[j]);
        err = std::max(err, std::abs(g - Complex(i == j ? 2.0 : 0.0)));
      }
    return err;
  }

  /// Coefficients c_i = Tr(s_i M), so that M = 1/2 sum_i c_i s_i.
  [[nodiscard]] std::vector<Complex> coefficients(const ComplexMatrix& m) const {
    std::vector<Complex> c(size());
    for (std::size_t i = 0; i < size(); ++i) c[i] = trace_product(elements_[i], m);
    return c;
  }

  [[nodiscard]] ComplexMatrix synthesize(std::span<const Complex> coeffs) const {
    ComplexMatrix m(d_);
    for (std::size_t i = 0; i < size(); ++i) m += (0.5 * coeffs[i]) * elements_[i];
    return m;
  }

 private:
  std::size_t d_ = 0;
  std::vector<ComplexMatrix> elements_;
};

/// Generalized Gell-Mann basis: sqrt(2/d) I, symmetric pairs (j<k), antisymmetric
/// pairs (j<k), then the d-1 diagonal elements. For d = 2 this is (I, X, Y, Z).
inline HermitianBasis gell_mann_basis(std::size_t d) {
  if (d < 2) throw Error("gell_mann_basis: dimension must be at least 2");
  std::vector<ComplexMatrix> els;
  els.reserve(d * d);
  els.push_back(std::sqrt(2.0 / static_cast<double>(d)) * ComplexMatrix::identity(d));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix m(d);
      m(j, k) = 1.0;
      m(k, j) = 1.0;
      els.push_back(std::move(m));
    }
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix m(d);
      m(j, k) = Complex(0, -1);
      m(k, j) = Complex(0, 1);
      els.push_back(std::move(m));
    }
  for (std::size_t l = 1; l < d; ++l) {
    ComplexMatrix m(d);
    const double scale = std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
    for (std::size_t i = 0; i < l; ++i) m(i, i) = scale;
    m(l, l) = -scale * static_cast<double>(l);
    els.push_back(std::move(m));
  }
  return HermitianBasis(d, std::move(els));
}

/// Dense real array over basis-index tuples.
struct RealTensor {
  std::vector<std::size_t> shape;
  std::vector<double> values;

  RealTensor() = default;
  explicit RealTensor(std::vector<std::size_t> s) : shape(std::move(s)) {
    values.assign(std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>()),
                  0.0);
  }

  double& operator()(std::size_t i, std::size_t j) { return values[i * shape[1] + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values[i * shape[1] + j]; }
  double& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return values[(i * shape[1] + j) * shape[2] + k];
  }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return values[(i * shape[1] + j) * shape[2] + k];
  }
};

using CorrelationTensor = RealTensor;

/// s_i (x) s_j for all index pairs, precomputed once per basis pair.
class ProductBasis {
 public:
  ProductBasis(HermitianBasis a, HermitianBasis b)
      : a_(std::move(a)), b_(std::move(b)) {
    products_.reserve(a_.size() * b_.size());
    for (const auto& sa : a_.elements())
      for (const auto& sb : b_.elements()) products_.push_back(kron(sa, sb));
  }

  [[nodiscard]] Dims dims() const { return {a_.dim(), b_.dim()}; }
  [[nodiscard]] const HermitianBasis& a() const { return a_; }
  [[nodiscard]] const HermitianBasis& b() const { return b_; }
  [[nodiscard]] const ComplexMatrix& product(std::size_t i, std::size_t j) const {
    return products_[i * b_.size() + j];
  }

 private:
  HermitianBasis a_;
  HermitianBasis b_;
  std::vector<ComplexMatrix> products_;
};

inline std::shared_ptr<const ProductBasis> gell_mann_product_basis(Dims dims) {
  return std::make_shared<const ProductBasis>(gell_mann_basis(dims.a), gell_mann_basis(dims.b));
}

/// T_ij = Re Tr(rho s_i^A (x) s_j^B).
inline CorrelationTensor correlation_tensor(const ComplexMatrix& rho, const HermitianBasis& basis_a,
                                            const HermitianBasis& basis_b) {
  const std::size_t da = basis_a.dim();
  const std::size_t db = basis_b.dim();
  detail::check_bipartite(rho, {da, db}, "correlation_tensor");
  CorrelationTensor t({basis_a.size(), basis_b.size()});
  ComplexMatrix reduced(db);
  for (std::size_t i = 0; i < basis_a.size(); ++i) {
    const ComplexMatrix& sa = basis_a[i];
    // reduced[b, b'] = sum_{a, a'} rho[(a, b), (a', b')] sa[a', a]
    for (std::size_t b = 0; b < db; ++b)
      for (std::size_t bp = 0; bp < db; ++bp) {
        Complex s{};
        for (std::size_t a = 0; a < da; ++a)
          for (std::size_t ap = 0; ap < da; ++ap) {
            const Complex w = sa(ap, a);
            if (w != Complex{}) s += rho(a * db + b, ap * db + bp) * w;
          }
        reduced(b, bp) = s;
      }
    for (std::size_t j = 0; j < basis_b.size(); ++j)
      t(i, j) = trace_product(reduced, basis_b[j]).real();
  }
  return t;
}

inline CorrelationTensor correlation_tensor(const ComplexMatrix& rho, Dims dims) {
  return correlation_tensor(rho, gell_mann_basis(dims.a), gell_mann_basis(dims.b));
}

/// rho = 1/4 sum_ij T_ij s_i (x) s_j.
inline ComplexMatrix state_from_tensor(const CorrelationTensor& t, const HermitianBasis& basis_a,
                                       const HermitianBasis& basis_b) {
  if (t.shape.size() != 2 || t.shape[0] != basis_a.size() || t.shape[1] != basis_b.size()) {
    throw Error("state_from_tensor: tensor shape does not match the bases");
  }
  ComplexMatrix rho(basis_a.dim() * basis_b.dim());
  for (std::size_t i = 0; i < basis_a.size(); ++i)
    for (std::size_t j = 0; j < basis_b.size(); ++j) {
      const double c = t(i, j);
      if (c == 0.0) continue;
      rho += (0.25 * c) * kron(basis_a[i], basis_b[j]);
    }
  return rho;
}

inline ComplexMatrix state_from_tensor(const CorrelationTensor& t, Dims dims) {
  return state_from_tensor(t, gell_mann_basis(dims.a), gell_mann_basis(dims.b));
}

/// T_{ijk} = Tr(rho s_i (x) s_j (x) s_k) over the Pauli basis of three qubits.
inline CorrelationTensor tripartite_correlation_tensor(const ComplexMatrix& rho) {
  if (rho.dim() != 8) throw Error("tripartite_correlation_tensor: expected an 8x8 matrix");
  const auto p = gell_mann_basis(2);
  CorrelationTensor t({4, 4, 4});
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const ComplexMatrix pij = kron(p[i], p[j]);
      for (std::size_t k = 0; k < 4; ++k)
        t(i, j, k) = trace_product(rho, kron(pij, p[k])).real();
    }
  return t;
}

}  // namespace entid
