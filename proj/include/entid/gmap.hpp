#pragma once

// Hermiticity-preserving maps acting on a state through its correlation tensor:
//
//   G[rho] = 1/4 sum_kl ( sum_ij G^{ij}_{kl} f(T_ij) ) s_k (x) s_l
//
// with f the identity for linear maps, sgn for the sign map and a constant 1
// for the PPT-generating map.

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "entid/bases.hpp"
#include "entid/matrix.hpp"

namespace entid {

enum class GMapKind { LinearTensor, Elementwise, Sign, PPTGen };

/// Correlations with |T_ij| at or below this are treated as exact zeros by sgn.
inline constexpr double kSignZeroTolerance = 1e-12;

inline double sgn(double x) {
  if (std::abs(x) <= kSignZeroTolerance) return 0.0;
  return x > 0.0 ? 1.0 : -1.0;
}

/// Tensor G^{ij}_{kl}: input index pair (i, j), output index pair (k, l).
class MetricTensor {
 public:
  MetricTensor() = default;
  MetricTensor(std::size_t na, std::size_t nb) : na_(na), nb_(nb), g_(na * nb * na * nb, 0.0) {}

  [[nodiscard]] std::size_t na() const { return na_; }
  [[nodiscard]] std::size_t nb() const { return nb_; }

  double& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    return g_[index(i, j, k, l)];
  }
  double operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return g_[index(i, j, k, l)];
  }

  /// C_kl = sum_ij G^{ij}_{kl} F_ij
  [[nodiscard]] RealTensor contract(const RealTensor& f) const {
    RealTensor c({na_, nb_});
    for (std::size_t i = 0; i < na_; ++i)
      for (std::size_t j = 0; j < nb_; ++j) {
        const double fij = f(i, j);
        if (fij == 0.0) continue;
        const double* row = &g_[index(i, j, 0, 0)];
        for (std::size_t kl = 0; kl < na_ * nb_; ++kl) c.values[kl] += row[kl] * fij;
      }
    return c;
  }

 private:
  [[nodiscard]] std::size_t index(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return ((i * nb_ + j) * na_ + k) * nb_ + l;
  }

  std::size_t na_ = 0;
  std::size_t nb_ = 0;
  std::vector<double> g_;
};

/// delta_ik delta_jl [i, j != 0]: drops local terms, keeps full correlations.
inline MetricTensor standard_metric_tensor(Dims dims) {
  const std::size_t na = dims.a * dims.a;
  const std::size_t nb = dims.b * dims.b;
  MetricTensor g(na, nb);
  for (std::size_t i = 1; i < na; ++i)
    for (std::size_t j = 1; j < nb; ++j) g(i, j, i, j) = 1.0;
  return g;
}

class GMap {
 public:
  GMap(GMapKind kind, std::string name, MetricTensor tensor, std::function<double(double)> f,
       std::shared_ptr<const ProductBasis> basis)
      : kind_(kind),
        name_(std::move(name)),
        tensor_(std::move(tensor)),
        f_(std::move(f)),
        basis_(std::move(basis)) {
    if (!basis_) throw Error("GMap: missing operator basis");
    if (tensor_.na() != basis_->a().size() || tensor_.nb() != basis_->b().size()) {
      throw Error("GMap: tensor shape does not match the basis");
    }
  }

  [[nodiscard]] GMapKind kind() const { return kind_; }
  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] Dims dims() const { return basis_->dims(); }
  [[nodiscard]] const MetricTensor& tensor() const { return tensor_; }
  [[nodiscard]] const ProductBasis& basis() const { return *basis_; }
  [[nodiscard]] std::shared_ptr<const ProductBasis> basis_ptr() const { return basis_; }
  [[nodiscard]] bool is_linear() const { return kind_ == GMapKind::LinearTensor; }

  /// f applied entrywise; the identity for linear maps.
  [[nodiscard]] RealTensor transform(const RealTensor& t) const {
    if (kind_ == GMapKind::LinearTensor) return t;
    RealTensor out = t;
    for (auto& x : out.values) x = f_(x);
    return out;
  }

 private:
  GMapKind kind_;
  std::string name_;
  MetricTensor tensor_;
  std::function<double(double)> f_;
  std::shared_ptr<const ProductBasis> basis_;
};

inline std::shared_ptr<const ProductBasis> resolve_basis(Dims dims,
                                                         std::shared_ptr<const ProductBasis> basis) {
  if (!basis) return gell_mann_product_basis(dims);
  if (basis->dims() != dims) throw Error("GMap: basis dimensions do not match");
  return basis;
}

inline GMap standard_metric(Dims dims, std::shared_ptr<const ProductBasis> basis = nullptr) {
  if (dims.a < 2 || dims.b < 2) throw Error("standard_metric: local dimensions must be >= 2");
  return GMap(GMapKind::LinearTensor, "metric", standard_metric_tensor(dims), nullptr,
              resolve_basis(dims, std::move(basis)));
}

inline GMap linear_gmap(Dims dims, MetricTensor tensor, std::string name = "linear",
                        std::shared_ptr<const ProductBasis> basis = nullptr) {
  return GMap(GMapKind::LinearTensor, std::move(name), std::move(tensor), nullptr,
              resolve_basis(dims, std::move(basis)));
}

inline GMap elementwise_gmap(Dims dims, MetricTensor tensor, std::function<double(double)> f,
                             std::string name = "elementwise",
                             std::shared_ptr<const ProductBasis> basis = nullptr) {
  if (!f) throw Error("elementwise_gmap: missing function");
  return GMap(GMapKind::Elementwise, std::move(name), std::move(tensor), std::move(f),
              resolve_basis(dims, std::move(basis)));
}

/// Standard metric applied to sgn(T_ij), sgn(0) = 0.
inline GMap sign_gmap(Dims dims, std::shared_ptr<const ProductBasis> basis = nullptr) {
  return GMap(GMapKind::Sign, "sign", standard_metric_tensor(dims), [](double x) { return sgn(x); },
              resolve_basis(dims, std::move(basis)));
}

/// Standard metric applied to T_ij^3.
inline GMap cubic_gmap(Dims dims, std::shared_ptr<const ProductBasis> basis = nullptr) {
  return elementwise_gmap(dims, standard_metric_tensor(dims), [](double x) { return x * x * x; },
                          "cubic", std::move(basis));
}

/// G^{ij}_{kl} = -delta_ij delta_jl delta_ik over nonzero indices with f = 1, so
/// G[rho] = -1/4 sum_i s_i (x) s_i for every rho. Two qubits only.
inline GMap pptgen_gmap(Dims dims = {2, 2}, std::shared_ptr<const ProductBasis> basis = nullptr) {
  if (dims != Dims{2, 2}) throw Error("pptgen_gmap: defined for two qubits only");
  MetricTensor g(4, 4);
  for (std::size_t i = 1; i < 4; ++i) g(i, i, i, i) = -1.0;
  return GMap(GMapKind::PPTGen, "pptgen", std::move(g), [](double) { return 1.0; },
              resolve_basis(dims, std::move(basis)));
}

/// 1/4 sum_kl C_kl s_k (x) s_l
inline ComplexMatrix operator_from_coefficients(const RealTensor& c, const ProductBasis& basis) {
  ComplexMatrix out(basis.dims().total());
  for (std::size_t k = 0; k < basis.a().size(); ++k)
    for (std::size_t l = 0; l < basis.b().size(); ++l) {
      const double ckl = c(k, l);
      if (ckl == 0.0) continue;
      const auto& p = basis.product(k, l);
      auto out_data = out.data();
      const auto p_data = p.data();
      for (std::size_t n = 0; n < out_data.size(); ++n) out_data[n] += 0.25 * ckl * p_data[n];
    }
  return out;
}

inline ComplexMatrix apply_gmap(const GMap& g, const ComplexMatrix& rho) {
  detail::check_bipartite(rho, g.dims(), "apply_gmap");
  const auto t = correlation_tensor(rho, g.basis().a(), g.basis().b());
  const auto c = g.tensor().contract(g.transform(t));
  return operator_from_coefficients(c, g.basis()).hermitian_part();
}

}  // namespace entid
