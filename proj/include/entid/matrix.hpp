#pragma once

// Dense complex matrices for small bipartite systems.
//
// Subsystem A is always the slow (left) Kronecker factor: for a product
// basis |i>|k> the composite index is i * dB + k.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace entid {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Relative tolerance for treating a matrix as Hermitian.
inline constexpr double kHermitianTolerance = 1e-12;
/// Eigenvalues below -kNegativityTolerance * max(1, |M|_max) count as negative.
inline constexpr double kNegativityTolerance = 1e-9;

/// Local dimensions of a bipartite system.
struct Dims {
  std::size_t a = 2;
  std::size_t b = 2;

  [[nodiscard]] constexpr std::size_t total() const { return a * b; }
  friend constexpr bool operator==(const Dims&, const Dims&) = default;
};

enum class Subsystem { A, B };

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
    if (dim == 0) throw Error("ComplexMatrix: dimension must be positive");
  }
  ComplexMatrix(std::size_t dim, std::initializer_list<Complex> row_major)
      : ComplexMatrix(dim) {
    if (row_major.size() != dim * dim) {
      throw Error("ComplexMatrix: initializer has wrong number of entries");
    }
    std::copy(row_major.begin(), row_major.end(), data_.begin());
  }

  static ComplexMatrix identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  /// |v><v|
  static ComplexMatrix projector(std::span<const Complex> v) {
    ComplexMatrix m(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
    return m;
  }

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] bool empty() const { return dim_ == 0; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

  [[nodiscard]] std::span<const Complex> data() const { return data_; }
  [[nodiscard]] std::span<Complex> data() { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    check_same(o, "operator+=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    check_same(o, "operator-=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  ComplexMatrix& operator*=(Complex s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(ComplexMatrix a, double s) { return a *= s; }
  friend ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    a.check_same(b, "operator*");
    const std::size_t n = a.dim_;
    ComplexMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  [[nodiscard]] ComplexMatrix adjoint() const {
    ComplexMatrix r(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
  }

  [[nodiscard]] ComplexMatrix transpose() const {
    ComplexMatrix r(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  [[nodiscard]] Complex trace() const {
    Complex t{};
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  /// max_ij |M_ij|
  [[nodiscard]] double max_abs() const {
    double m = 0.0;
    for (const auto& x : data_) m = std::max(m, std::abs(x));
    return m;
  }

  [[nodiscard]] double hermiticity_defect() const {
    double m = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i; j < dim_; ++j)
        m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
  }

  [[nodiscard]] bool is_hermitian(double rel_tol = kHermitianTolerance) const {
    return hermiticity_defect() <= rel_tol * std::max(1.0, max_abs());
  }

  /// (M + M^dagger) / 2
  [[nodiscard]] ComplexMatrix hermitian_part() const {
    ComplexMatrix r(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        r(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
    return r;
  }

 private:
  void check_same(const ComplexMatrix& o, const char* what) const {
    if (o.dim_ != dim_) {
      throw Error(std::string(what) + ": dimension mismatch (" + std::to_string(dim_) +
                  " vs " + std::to_string(o.dim_) + ")");
    }
  }

  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

/// max_ij |A_ij - B_ij|
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw Error("max_abs_diff: dimension mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  ComplexMatrix r(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) r(i * db + k, j * db + l) = aij * b(k, l);
    }
  return r;
}

inline ComplexVector kron(std::span<const Complex> x, std::span<const Complex> y) {
  ComplexVector r(x.size() * y.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t k = 0; k < y.size(); ++k) r[i * y.size() + k] = x[i] * y[k];
  return r;
}

namespace detail {
inline void check_bipartite(const ComplexMatrix& m, Dims dims, const char* what) {
  if (dims.a == 0 || dims.b == 0 || m.dim() != dims.total()) {
    throw Error(std::string(what) + ": matrix of dimension " + std::to_string(m.dim()) +
                " does not match local dimensions " + std::to_string(dims.a) + "x" +
                std::to_string(dims.b));
  }
}
}  // namespace detail

inline ComplexMatrix partial_transpose(const ComplexMatrix& m, Dims dims,
                                       Subsystem which = Subsystem::B) {
  detail::check_bipartite(m, dims, "partial_transpose");
  const std::size_t da = dims.a;
  const std::size_t db = dims.b;
  ComplexMatrix r(m.dim());
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) {
          const Complex v = m(i * db + k, j * db + l);
          if (which == Subsystem::B) {
            r(i * db + l, j * db + k) = v;
          } else {
            r(j * db + k, i * db + l) = v;
          }
        }
  return r;
}

/// Traces out `traced`; the result lives on the remaining factor.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, Dims dims, Subsystem traced) {
  detail::check_bipartite(m, dims, "partial_trace");
  const std::size_t da = dims.a;
  const std::size_t db = dims.b;
  if (traced == Subsystem::B) {
    ComplexMatrix r(da);
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < da; ++j)
        for (std::size_t k = 0; k < db; ++k) r(i, j) += m(i * db + k, j * db + k);
    return r;
  }
  ComplexMatrix r(db);
  for (std::size_t k = 0; k < db; ++k)
    for (std::size_t l = 0; l < db; ++l)
      for (std::size_t i = 0; i < da; ++i) r(k, l) += m(i * db + k, i * db + l);
  return r;
}

/// Tr(A^dagger B)
inline Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw Error("hs_inner: dimension mismatch");
  Complex s{};
  for (std::size_t k = 0; k < a.data().size(); ++k) s += std::conj(a.data()[k]) * b.data()[k];
  return s;
}

/// Tr(A B) without forming the product.
inline Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw Error("trace_product: dimension mismatch");
  const std::size_t n = a.dim();
  Complex s{};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) s += a(i, k) * b(k, i);
  return s;
}

/// <v|M|v>
inline Complex expectation(const ComplexMatrix& m, std::span<const Complex> v) {
  if (v.size() != m.dim()) throw Error("expectation: dimension mismatch");
  Complex s{};
  for (std::size_t i = 0; i < v.size(); ++i) {
    Complex row{};
    for (std::size_t j = 0; j < v.size(); ++j) row += m(i, j) * v[j];
    s += std::conj(v[i]) * row;
  }
  return s;
}

inline double norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

namespace pauli {
inline ComplexMatrix i2() { return ComplexMatrix::identity(2); }
inline ComplexMatrix x() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }
inline ComplexMatrix y() { return ComplexMatrix(2, {0.0, Complex(0, -1), Complex(0, 1), 0.0}); }
inline ComplexMatrix z() { return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}); }
}  // namespace pauli

}  // namespace entid
