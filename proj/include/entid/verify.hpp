#pragma once

// Property suite run by `entid verify`: map duality, transpose-composition
// duality, the Phi+ identity, the Choi isomorphism, the witness coefficient
// formula, block positivity, soundness, optimizer agreement and the
// eigensolver. Every check reports its largest error against a fixed bound.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "entid/bases.hpp"
#include "entid/cj_maps.hpp"
#include "entid/eigen.hpp"
#include "entid/gmap.hpp"
#include "entid/identifier.hpp"
#include "entid/multipartite.hpp"
#include "entid/product_max.hpp"
#include "entid/random.hpp"
#include "entid/states.hpp"

namespace entid {

struct VerifyOptions {
  std::uint64_t seed = 20170801;
  /// Hermitian pairs per duality check.
  int pairs = 50;
  /// States per soundness / verdict-agreement check.
  int states = 200;
  /// Hermitian inputs per dimension pair for optimizer vs oracle.
  int oracle_inputs = 50;
  int block_samples = 10000;
  ProductMaxOptions optimizer;
  /// Negative control: scale one basis element so the identities must fail.
  bool corrupt_basis = false;
};

struct CheckResult {
  std::string name;
  int cases = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
  double wall_seconds = 0.0;
};

inline constexpr double kIdentityTolerance = 1e-9;
inline constexpr double kOracleTolerance = 1e-3;

namespace detail {

/// Gell-Mann basis, optionally with its last element scaled by 1.05.
inline HermitianBasis verify_basis(std::size_t d, bool corrupt) {
  auto b = gell_mann_basis(d);
  if (!corrupt) return b;
  auto els = b.elements();
  els.back() = 1.05 * els.back();
  return HermitianBasis(d, std::move(els));
}

inline std::shared_ptr<const ProductBasis> verify_product_basis(Dims dims, bool corrupt) {
  return std::make_shared<const ProductBasis>(verify_basis(dims.a, corrupt), verify_basis(dims.b, corrupt));
}

class StreamSeeds {
 public:
  explicit StreamSeeds(std::uint64_t master) : master_(master) {}
  std::uint64_t next() { return derive_seed(master_, counter_++); }

 private:
  std::uint64_t master_;
  std::uint64_t counter_ = 0;
};

inline ComplexMatrix random_hermitian_seeded(std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  return random_hermitian(d, rng);
}

inline MetricTensor random_metric_tensor(Dims dims, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> n(0.0, 0.5);
  MetricTensor g(dims.a * dims.a, dims.b * dims.b);
  for (std::size_t i = 0; i < g.na(); ++i)
    for (std::size_t j = 0; j < g.nb(); ++j)
      for (std::size_t k = 0; k < g.na(); ++k)
        for (std::size_t l = 0; l < g.nb(); ++l) g(i, j, k, l) = n(rng);
  return g;
}

/// max over Bloch vectors x (grid) and y (closed form) of sum_kl C_kl X_k Y_l
/// with X = (1, x), Y = (1, y); two qubits only.
inline double bloch_tmax(const RealTensor& c, int grid) {
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    const double theta = std::numbers::pi * i / (grid - 1);
    for (int j = 0; j < 2 * grid; ++j) {
      const double phi = std::numbers::pi * j / grid;
      const double x[4] = {1.0, std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
      double a[4] = {0, 0, 0, 0};
      for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t l = 0; l < 4; ++l) a[l] += x[k] * c(k, l);
      best = std::max(best, a[0] + std::sqrt(a[1] * a[1] + a[2] * a[2] + a[3] * a[3]));
      if (i == 0 || i == grid - 1) break;
    }
  }
  return best;
}

}  // namespace detail

class VerifySuite {
 public:
  explicit VerifySuite(VerifyOptions opts) : opts_(std::move(opts)) {}

  std::vector<CheckResult> run_all() {
    std::vector<CheckResult> out;
    const std::vector<std::pair<std::string, std::function<CheckResult()>>> checks = {
        {"basis_orthonormality", [&] { return basis_orthonormality(); }},
        {"map_duality", [&] { return map_duality(); }},
        {"transpose_composition_duality", [&] { return transpose_composition_duality(); }},
        {"dual_map_coefficient_form", [&] { return dual_map_coefficient_form(); }},
        {"phi_plus_identity", [&] { return phi_plus_identity(); }},
        {"choi_isomorphism", [&] { return choi_isomorphism(); }},
        {"witness_coefficient_formula", [&] { return witness_coefficient_formula(); }},
        {"pptgen_dual_is_half_identity", [&] { return pptgen_dual_is_half_identity(); }},
        {"block_positivity", [&] { return block_positivity(); }},
        {"soundness_separable", [&] { return soundness_separable(); }},
        {"identifier_implies_map", [&] { return identifier_implies_map(); }},
        {"pptgen_map_matches_ppt", [&] { return pptgen_map_matches_ppt(); }},
        {"sign_criterion_equivalence", [&] { return sign_criterion_equivalence(); }},
        {"tmax_relation", [&] { return tmax_relation(); }},
        {"optimizer_vs_oracle", [&] { return optimizer_vs_oracle(); }},
        {"optimizer_monotone_ascent", [&] { return optimizer_monotone_ascent(); }},
        {"eigensolver_reconstruction", [&] { return eigensolver_reconstruction(); }},
        {"biproduct_soundness", [&] { return biproduct_soundness(); }},
        {"cut_covariance", [&] { return cut_covariance(); }},
    };
    for (const auto& [name, fn] : checks) {
      const auto start = std::chrono::steady_clock::now();
      CheckResult r;
      try {
        r = fn();
      } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
      }
      r.name = name;
      r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      out.push_back(std::move(r));
    }
    return out;
  }

  CheckResult basis_orthonormality() {
    CheckResult r = make(kIdentityTolerance);
    for (std::size_t d : {2, 3, 4}) {
      r.max_error = std::max(r.max_error, detail::verify_basis(d, opts_.corrupt_basis).max_gram_error());
      ++r.cases;
    }
    return finish(r, "Tr(s_i s_j) = 2 delta_ij for d = 2, 3, 4");
  }

  /// Tr(a1 Lambda[a2]) = Tr(Lambda^d[a1] a2)
  CheckResult map_duality() {
    CheckResult r = make(kIdentityTolerance);
    detail::StreamSeeds seeds(derive_seed(opts_.seed, 1));
    for (Dims dims : {Dims{2, 2}, Dims{2, 3}}) {
      const auto g = standard_metric(dims);
      for (int n = 0; n < opts_.pairs; ++n) {
        const auto w = witness_operator(g, random_state(dims.total(), seeds.next()), opts_.optimizer);
        const auto a1 = detail::random_hermitian_seeded(dims.b, seeds.next());
        const auto a2 = detail::random_hermitian_seeded(dims.a, seeds.next());
        const Complex lhs = trace_product(a1, lambda_apply(w, a2));
        const Complex rhs = trace_product(lambda_dual_apply(w, a1), a2);
        r.max_error = std::max(r.max_error, std::abs(lhs - rhs));
        ++r.cases;
      }
    }
    return finish(r, "Hermitian pairs on 2x2 and 2x3 witnesses");
  }

  /// Tr((Lambda o T)[a1] a2) = Tr(a1 (T o Lambda^d)[a2])
  CheckResult transpose_composition_duality() {
    CheckResult r = make(kIdentityTolerance);
    detail::StreamSeeds seeds(derive_seed(opts_.seed, 2));
    for (Dims dims : {Dims{2, 2}, Dims{3, 2}}) {
      const auto g = sign_gmap(dims);
      for (int n = 0; n < opts_.pairs; ++n) {
        const auto w = witness_operator(g, random_state(dims.total(), seeds.next()), opts_.optimizer);
        const auto a1 = detail::random_hermitian_seeded(dims.a, seeds.next());
        const auto a2 = detail::random_hermitian_seeded(dims.b, seeds.next());
        const Complex lhs = trace_product(lambda_apply(w, a1.transpose()), a2);
        const Complex rhs = trace_product(a1, lambda_dual_apply(w, a2).transpose());
        r.max_error = std::max(r.max_error, std::abs(lhs - rhs));
        ++r.cases;
      }
    }
    return finish(r, "Hermitian pairs on 2x2 and 3x2 sign-map witnesses");
  }

  /// Contraction form of Lambda^d against the basis coefficient sum.
  CheckResult dual_map_coefficient_form() {
    CheckResult r = make(kIdentityTolerance);
    detail::StreamSeeds seeds(derive_seed(opts_.seed, 3));
    for (Dims dims : {Dims{2, 2}, Dims{2, 3}, Dims{3, 3}}) {
      const auto ba = detail::verify_basis(dims.a, opts_.corrupt_basis);
      const auto bb = detail::verify_basis(dims.b, opts_.corrupt_basis);
      const auto g = standard_metric(dims);
      for (int n = 0; n < opts_.pairs / 5 + 1; ++n) {
        const auto w = witness_operator(g, random_state(dims.total(), seeds.next()), opts_.optimizer);
        const auto coeffs = witness_coefficients(w, ba, bb);
        const auto l = detail::random_hermitian_seeded(dims.b, seeds.next());
        r.max_error = std::max(r.max_error,
                               max_abs_diff(lambda_dual_apply(w, l), lambda_dual_from_coefficients(coeffs, ba, bb, l)));
        const auto m = detail::random_hermitian_seeded(dims.a, seeds.next());
        r.max_error =
            std::max(r.max_error, max_abs_diff(lambda_apply(w, m), lambda_from_coefficients(coeffs, ba, bb, m)));
        ++r.cases;
      }
    }
    return finish(r, "Tr_B[W (I (x) l)] vs 1/4 sum w_ij Tr(s_j l) s_i, both directions");
  }

  /// (1 (x) T) sum_m s_m (x) s_m = sum_ij |ii><jj|
  CheckResult phi_plus_identity() {
    CheckResult r = make(kIdentityTolerance);
    for (std::size_t d : {2, 3}) {
      const auto s = max_entangled_operator(detail::verify_basis(d, opts_.corrupt_basis));
      r.max_error = std::max(r.max_error, max_abs_diff(partial_transpose(s, {d, d}), phi_plus(d)));
      ++r.cases;
    }
    return finish(r, "d = 2 and d = 3");
  }

  CheckResult choi_isomorphism() {
    CheckResult r = make(kIdentityTolerance);
    detail::StreamSeeds seeds(derive_seed(opts_.seed, 4));
    const Dims dims{2, 2};
    const auto basis = detail::verify_basis(2, opts_.corrupt_basis);
    const auto add = [&](const GMap& g, const ComplexMatrix& rho) {
      r.max_error = std::max(r.max_error, isomorphism_check(g, rho, basis, opts_.optimizer));
      ++r.cases;
    };
    add(standard_metric(dims), singlet());
    add(sign_gmap(dims), weyl_state(0.3, -0.2, 0.5));
    for (int n = 0; n < 10; ++n) {
      add(pptgen_gmap(), random_state(4, seeds.next()));
      add(standard_metric(dims), random_state(4, seeds.next()));
      add(cubic_gmap(dims), random_state(4, seeds.next()));
    }
    const auto basis3 = detail::verify_basis(3, opts_.corrupt_basis);
    for (int n = 0; n < 3; ++n) {
      r.max_error = std::max(r.max_error, isomorphism_check(standard_metric({3, 3}), random_state(9, seeds.next()),
                                                            basis3, opts_.optimizer));
      ++r.cases;
    }
    return finish(r, "W vs (1 (x) Lambda)[1/2 sum s_m (x) s_m]");
  }

  /// w_ij = T~_ij - sum_kl G^{kl}_{ij} T_kl with T~_00 = 2 sqrt(dA dB) omega~0.
  CheckResult witness_coefficient_formula() {
    CheckResult r = make(kIdentityTolerance);
    detail::StreamSeeds seeds(derive_seed(opts_.seed, 5));
    for (Dims dims : {Dims{2, 2}, Dims{2, 3}}) {
      const auto basis = detail::verify_product_basis(dims, opts_.corrupt_basis);
      for (int n = 0; n < 20; ++n) {
        const GMap g = n % 2 == 0 ? standard_metric(dims, basis)
                                  : linear_gmap(dims, detail::random_metric_tensor(dims, seeds.next()), "random", basis);
        const auto rho = random_state(dims.total(), seeds.next());
        const auto w = witness_operator(g, rho, opts_.optimizer);
        const auto coeffs = witness_coefficients(w, basis->a(), basis->b());
        auto expected = g.tensor().contract(correlation_tensor(rho, basis->a(), basis->b()));
        for (auto& x : expected.values) x = -x;
        expected(0, 0) += 2.0 * std::sqrt(static_cast<double>(dims.total())) * w.omega_tilde0;
        for (std::size_t k = 0; k < coeffs.values.size(); ++k)
          r.max_error = std::max(r.max_error, std::abs(coeffs.values[k] - expected.values[k]));
        ++r.cases;
      }
    }
    return finish(r, "standard and random linear metrics on 2x2 and 2x3");
  }

  CheckResult pptgen_dual_is_half_identity() {
    CheckResult r = make(kIdentityTolerance);
    detail::StreamSeeds seeds(derive_seed(opts_.seed, 6));
    for (int n = 0; n < opts_.pairs; ++n) {
      const auto w = witness_operator(pptgen_gmap(), random_state(4, seeds.next()), opts_.optimizer);
      const auto l = detail::random_hermitian_seeded(2, seeds.next());
      r.max_error = std::max(r.max_error, max_abs_diff(lambda_dual_apply(w, l), 0.5 * l));
      ++r.cases;
    }
    return finish(r, "Lambda^d[l] = l/2 for the PPT-generating map");
  }

  /// Reported error is the amount by which the sampled minimum falls below zero.
  CheckResult block_positivity() {
    CheckResult r = make(kIdentityTolerance);
    detail::StreamSeeds seeds(derive_seed(opts_.seed, 7));
    const auto add = [&](const WitnessOperator& w) {
      const double m = block_positivity_sample(w, opts_.block_samples, seeds.next());
      r.max_error = std::max(r.max_error, -m);
      ++r.cases;
    };
    add(witness_operator(standard_metric({2, 2}), singlet(), opts_.optimizer));
    for (int n = 0; n < 4; ++n) {
      add(witness_operator(standard_metric({2, 2}), random_state(4, seeds.next()), opts_.optimizer));
      add(witness_operator(sign_gmap({2, 3}), random_state(6, seeds.next()), opts_.optimizer));
      add(witness_operator(cubic_gmap({3, 3}), qutrit_werner(0.8, 0.9), opts_.optimizer));
    }
    r.max_error = std::max(r.max_error, 0.0);
    return finish(r, std::to_string(opts_.block_samples) + " product samples per witness");
  }

  /// Reported error is the largest negativity seen on a separable state.
  CheckResult soundness_separable() {
    CheckResult r = make(kIdentityTolerance);
    detail::StreamSeeds seeds(derive_seed(opts_.seed, 8));
    int detections = 0;
    for (Dims dims : {Dims{2, 2}, Dims{2, 3}}) {
      const auto basis = gell_mann_product_basis(dims);
      std::vector<GMap> maps = {standard_metric(dims, basis), sign_gmap(dims, basis), cubic_gmap(dims, basis)};
      if (dims == Dims{2, 2}) maps.push_back(pptgen_gmap(dims, basis));
      for (int n = 0; n < opts_.states / 2; ++n) {
        const std::size_t terms = 1 + static_cast<std::size_t>(n % 4);
        const auto rho = random_separable(dims, terms, seeds.next());
        for (const auto& g : maps) {
          const auto id = identifier_value(g, rho, opts_.optimizer);
          r.max_error = std::max(r.max_error, -id.omega);
          detections += id.detected ? 1 : 0;
        }
        const auto m = map_condition(standard_metric(dims, basis), rho, rho, opts_.optimizer);
        r.max_error = std::max(r.max_error, -m.min_eig);
        detections += m.detected ? 1 : 0;
        ++r.cases;
      }
    }
    r.max_error = std::max(r.max_error, 0.0);
    r = finish(r, "mixtures of 1-4 pure products; identifiers and induced maps");
    if (detections > 0) {
      r.passed = false;
      r.detail += "; " + std::to_string(detections) + " false detections";
    }
    return r;
  }

  /// Verdict implication; error counts violations.
  CheckResult identifier_implies_map() {
    CheckResult r = make(0.0);
    detail::StreamSeeds seeds(derive_seed(opts_.seed, 9));
    const auto basis = gell_mann_product_basis({2, 2});
    const std::vector<GMap> maps = {standard_metric({2, 2}, basis), sign_gmap({2, 2}, basis)};
    int detected = 0;
    for (int n = 0; n < opts_.states; ++n) {
      const auto rho = n % 2 == 0 ? random_state(4, seeds.next()) : random_pure(4, seeds.next());
      for (const auto& g : maps) {
        const auto w = witness_operator(g, rho, opts_.optimizer);
        const bool id = trace_product(rho, w.matrix).real() < -kDetectionTolerance;
        const bool map = map_condition(w, rho, {2, 2}).detected;
        detected += id ? 1 : 0;
        if (id && !map) r.max_error += 1.0;
      }
      ++r.cases;
    }
    return finish(r, std::to_string(detected) + " identifier detections, each must be a map detection");
  }

  CheckResult pptgen_map_matches_ppt() {
    CheckResult r = make(0.0);
    detail::StreamSeeds seeds(derive_seed(opts_.seed, 10));
    for (int n = 0; n < opts_.states; ++n) {
      const auto rho = random_state(4, seeds.next());
      const bool map = map_condition(pptgen_gmap(), rho, rho, opts_.optimizer).detected;
      if (map != ppt_check(rho, {2, 2}).detected) r.max_error += 1.0;
      ++r.cases;
    }
    return finish(r, "mismatching verdicts");
  }

  /// sign verdict vs the comparison lhs < rhs, skipping near-ties.
  CheckResult sign_criterion_equivalence() {
    CheckResult r = make(0.0);
    detail::StreamSeeds seeds(derive_seed(opts_.seed, 11));
    int skipped = 0;
    for (int n = 0; n < opts_.states / 2; ++n) {
      const auto rho = random_state(4, seeds.next());
      const auto rep = sign_criterion(rho, {2, 2}, opts_.optimizer);
      const auto id = identifier_value(sign_gmap({2, 2}), rho, opts_.optimizer);
      if (rep.detected != id.detected) r.max_error += 1.0;
      if (std::abs(*rep.lhs - *rep.rhs) < 1e-6) {
        ++skipped;
      } else if (rep.detected != (*rep.lhs < *rep.rhs)) {
        r.max_error += 1.0;
      }
      ++r.cases;
    }
    return finish(r, "mismatching verdicts (" + std::to_string(skipped) + " near-ties skipped)");
  }

  /// T_max over Bloch vectors equals 4 omega~0 for linear maps on two qubits.
  CheckResult tmax_relation() {
    CheckResult r = make(kOracleTolerance);
    detail::StreamSeeds seeds(derive_seed(opts_.seed, 12));
    const Dims dims{2, 2};
    for (int n = 0; n < 20; ++n) {
      const GMap g = n % 2 == 0 ? standard_metric(dims)
                                : linear_gmap(dims, detail::random_metric_tensor(dims, seeds.next()));
      const auto rho = random_state(4, seeds.next());
      const auto c = g.tensor().contract(correlation_tensor(rho, dims));
      const double tmax = detail::bloch_tmax(c, 200);
      const double w0 = identifier_value(g, rho, opts_.optimizer).omega_tilde0;
      r.max_error = std::max(r.max_error, std::abs(tmax - 4.0 * w0));
      ++r.cases;
    }
    return finish(r, "Bloch-grid T_max vs 4 omega~0");
  }

  /// |product_max - oracle| <= 1e-3, and the oracle (a lower bound) never
  /// exceeds product_max by more than rounding.
  CheckResult optimizer_vs_oracle() {
    CheckResult r = make(kOracleTolerance);
    detail::StreamSeeds seeds(derive_seed(opts_.seed, 13));
    double overshoot = 0.0;
    for (Dims dims : {Dims{2, 2}, Dims{2, 3}, Dims{3, 3}}) {
      const int inputs = dims == Dims{3, 3} ? std::max(1, opts_.oracle_inputs / 5) : opts_.oracle_inputs;
      for (int n = 0; n < inputs; ++n) {
        const auto m = detail::random_hermitian_seeded(dims.total(), seeds.next());
        const double fast = product_max(m, dims, opts_.optimizer).value;
        OracleOptions oo;
        oo.seed = seeds.next();
        const double slow = product_max_oracle(m, dims, oo);
        r.max_error = std::max(r.max_error, std::abs(fast - slow));
        overshoot = std::max(overshoot, slow - fast);
        ++r.cases;
      }
    }
    r = finish(r, "random Hermitian inputs on 2x2, 2x3, 3x3");
    if (overshoot > 1e-6) {
      r.passed = false;
      r.detail += "; oracle exceeded optimizer by " + format_error(overshoot);
    }
    return r;
  }

  CheckResult optimizer_monotone_ascent() {
    CheckResult r = make(1e-12);
    detail::StreamSeeds seeds(derive_seed(opts_.seed, 14));
    for (Dims dims : {Dims{2, 2}, Dims{3, 3}, Dims{4, 2}}) {
      for (int n = 0; n < 20; ++n) {
        const auto m = detail::random_hermitian_seeded(dims.total(), seeds.next());
        const auto res = product_max(m, dims, opts_.optimizer);
        r.max_error = std::max(r.max_error, -res.worst_step / std::max(1.0, m.max_abs()));
        ++r.cases;
      }
    }
    return finish(r, "largest relative decrease between half steps");
  }

  CheckResult eigensolver_reconstruction() {
    CheckResult r = make(kIdentityTolerance);
    detail::StreamSeeds seeds(derive_seed(opts_.seed, 15));
    for (std::size_t d : {2, 3, 4, 6, 9, 16}) {
      for (int n = 0; n < 5; ++n) {
        const auto m = detail::random_hermitian_seeded(d, seeds.next());
        const auto spec = hermitian_eig(m);
        const auto& v = spec.eigenvectors;
        const auto rebuilt = v * ComplexMatrix::diagonal(spec.eigenvalues) * v.adjoint();
        r.max_error = std::max(r.max_error, max_abs_diff(rebuilt, m));
        r.max_error = std::max(r.max_error, max_abs_diff(v.adjoint() * v, ComplexMatrix::identity(d)));
        ++r.cases;
      }
    }
    return finish(r, "V diag V^dagger and V^dagger V");
  }

  /// Mixtures of up to four states that are pure and product across the cut.
  CheckResult biproduct_soundness() {
    CheckResult r = make(kIdentityTolerance);
    detail::StreamSeeds seeds(derive_seed(opts_.seed, 16));
    int detections = 0;
    const auto cuts = all_bipartitions();
    for (int n = 0; n < 100; ++n) {
      const auto& cut = cuts[static_cast<std::size_t>(n) % cuts.size()];
      Rng rng(seeds.next());
      std::uniform_real_distribution<double> u(0.05, 1.0);
      const int terms = 1 + n % 4;
      ComplexMatrix flat(8);
      double total = 0.0;
      for (int t = 0; t < terms; ++t) {
        const double w = u(rng);
        const auto merged = random_unit_vector(4, rng);
        const auto single = random_unit_vector(2, rng);
        flat += w * ComplexMatrix::projector(kron(merged, single));
        total += w;
      }
      flat *= 1.0 / total;
      const auto rho = bipartition_flatten_inverse(flat, cut);
      const auto id = metric_identifier_bipartition(rho, cut, opts_.optimizer);
      r.max_error = std::max(r.max_error, -id.omega);
      detections += id.detected ? 1 : 0;
      ++r.cases;
    }
    r.max_error = std::max(r.max_error, 0.0);
    r = finish(r, "three-qubit states biproduct across the tested cut");
    if (detections > 0) {
      r.passed = false;
      r.detail += "; " + std::to_string(detections) + " false detections";
    }
    return r;
  }

  /// omega of rho across a cut equals omega of the relabeled state across the
  /// relabeled cut.
  CheckResult cut_covariance() {
    CheckResult r = make(1e-8);
    detail::StreamSeeds seeds(derive_seed(opts_.seed, 17));
    const Bipartition relabel = Bipartition::parse("23|1");
    for (int n = 0; n < 6; ++n) {
      const auto rho = n < 2 ? w_noise(0.5 + 0.2 * n) : random_state(8, seeds.next());
      // Relabeled state: new qubit p is old qubit relabel.order[p].
      const auto moved = bipartition_flatten(rho, relabel);
      for (const auto& cut : all_bipartitions()) {
        Bipartition moved_cut;
        moved_cut.split = cut.split;
        for (int p = 0; p < 3; ++p) {
          const int old = cut.order[p];
          moved_cut.order[p] = static_cast<int>(std::find(relabel.order.begin(), relabel.order.end(), old) -
                                                relabel.order.begin());
        }
        const auto a = metric_identifier_bipartition(rho, cut, opts_.optimizer);
        const auto b = metric_identifier_bipartition(moved, moved_cut, opts_.optimizer);
        r.max_error = std::max(r.max_error, std::abs(a.omega - b.omega));
        if (a.detected != b.detected) r.max_error = std::max(r.max_error, 1.0);
        ++r.cases;
      }
    }
    return finish(r, "metric identifier under qubit relabeling");
  }

 private:
  static CheckResult make(double tol) {
    CheckResult r;
    r.tolerance = tol;
    return r;
  }

  static std::string format_error(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
  }

  static CheckResult finish(CheckResult r, std::string detail) {
    r.passed = std::isfinite(r.max_error) && r.max_error <= r.tolerance;
    r.detail = std::move(detail);
    return r;
  }

  VerifyOptions opts_;
};

}  // namespace entid
