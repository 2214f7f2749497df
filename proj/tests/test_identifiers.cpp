#include <catch_amalgamated.hpp>

#include "entid/identifier.hpp"
#include "entid/random.hpp"
#include "entid/states.hpp"
#include "oracles.hpp"

using namespace entid;
using Catch::Matchers::WithinAbs;

namespace {

ComplexMatrix pauli_sum(double c1, double c2, double c3) {
  return 0.25 * (c1 * kron(oracle::pauli(1), oracle::pauli(1)) + c2 * kron(oracle::pauli(2), oracle::pauli(2)) +
                 c3 * kron(oracle::pauli(3), oracle::pauli(3)));
}

}  // namespace

TEST_CASE("standard metric G-map", "[identifiers]") {
  const auto g = standard_metric({2, 2});
  CHECK(max_abs_diff(apply_gmap(g, singlet()), pauli_sum(-1, -1, -1)) < 1e-14);
  CHECK(apply_gmap(g, maximally_mixed(4)).max_abs() < 1e-15);

  // Product state: G = 1/4 sum_{ij>=1} X_i Y_j s_i (x) s_j.
  const auto ra = random_pure(2, 5);
  const auto rb = random_pure(2, 6);
  ComplexMatrix want(4);
  for (int i = 1; i < 4; ++i)
    for (int j = 1; j < 4; ++j) {
      const double xi = trace_product(ra, oracle::pauli(i)).real();
      const double yj = trace_product(rb, oracle::pauli(j)).real();
      want += (0.25 * xi * yj) * kron(oracle::pauli(i), oracle::pauli(j));
    }
  CHECK(max_abs_diff(apply_gmap(g, kron(ra, rb)), want) < 1e-12);

  const auto r1 = random_state(4, 7);
  const auto r2 = random_state(4, 8);
  const auto lhs = apply_gmap(g, 0.5 * (r1 + r2));
  const auto rhs = 0.5 * (apply_gmap(g, r1) + apply_gmap(g, r2));
  CHECK(max_abs_diff(lhs, rhs) < 1e-14);
}

TEST_CASE("nonlinear and constant G-maps", "[identifiers]") {
  const auto p = apply_gmap(pptgen_gmap(), random_state(4, 1));
  CHECK(max_abs_diff(p, pauli_sum(-1, -1, -1)) < 1e-15);
  CHECK_THROWS_AS(pptgen_gmap({2, 3}), Error);
  CHECK(max_abs_diff(apply_gmap(sign_gmap({2, 2}), weyl_state(0.3, -0.2, 0.5)), pauli_sum(1, -1, 1)) < 1e-14);
  CHECK(sgn(0.0) == 0.0);
  CHECK(sgn(1e-13) == 0.0);
  CHECK(sgn(-0.2) == -1.0);

  const auto c = apply_gmap(cubic_gmap({2, 2}), werner(0.5));
  CHECK(max_abs_diff(c, pauli_sum(0.125, -0.125, 0.125)) < 1e-14);

  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto rho = random_state(6, s);
    for (const auto& g : {standard_metric({2, 3}), sign_gmap({2, 3}), cubic_gmap({2, 3})})
      CHECK(apply_gmap(g, rho).is_hermitian());
  }
}

TEST_CASE("standard metric operator form is PSD on states", "[identifiers]") {
  for (Dims dims : {Dims{2, 2}, Dims{2, 3}, Dims{3, 3}}) {
    const auto g = standard_metric(dims);
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto rho = random_state(dims.total(), 300 + s);
      CHECK(trace_product(rho, apply_gmap(g, rho)).real() >= -1e-10);
    }
  }
}

TEST_CASE("product_max examples", "[identifiers][optimizer]") {
  CHECK_THAT(product_max(ComplexMatrix(4), {2, 2}).value, WithinAbs(0.0, 1e-15));
  const auto g = standard_metric({2, 2});
  CHECK_THAT(product_max(apply_gmap(g, singlet()), {2, 2}).value, WithinAbs(0.25, 1e-10));
  for (double v : {0.1, 0.5, 0.9})
    CHECK_THAT(product_max(apply_gmap(g, werner(v)), {2, 2}).value, WithinAbs(v / 4, 1e-10));
  ComplexMatrix skew(4);
  skew(0, 1) = 1.0;
  CHECK_THROWS_AS(product_max(skew, {2, 2}), Error);

  CHECK_THAT(product_max_oracle(ComplexMatrix::identity(4), {2, 2}), WithinAbs(1.0, 1e-12));
  CHECK_THAT(product_max_oracle(kron(oracle::pauli(3), oracle::pauli(3)), {2, 2}), WithinAbs(1.0, 1e-12));
  CHECK_THROWS_AS(product_max_oracle(ComplexMatrix::identity(16), {4, 4}), Error);
}

TEST_CASE("product_max agrees with closed forms on diagonal correlations", "[identifiers][optimizer]") {
  // For M = 1/4 sum c_i s_i (x) s_i, the product maximum is max|c_i| / 4.
  // The alternating iteration converges at rate (c_2/c_1)^2, so nearly equal
  // leading |c_i| can exhaust the iteration cap short of 1e-9.
  Rng rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n = 0; n < 30; ++n) {
    const double c1 = u(rng);
    const double c2 = u(rng);
    const double c3 = u(rng);
    CHECK_THAT(product_max(pauli_sum(c1, c2, c3), {2, 2}).value,
               WithinAbs(oracle::diagonal_product_max(c1, c2, c3) / 4, 1e-6));
  }
}

TEST_CASE("product_max matches the brute-force oracle", "[identifiers][optimizer]") {
  Rng rng(2024);
  for (int n = 0; n < 10; ++n) {
    const auto m = random_hermitian(4, rng);
    const double fast = product_max(m, {2, 2}).value;
    const double slow = product_max_oracle(m, {2, 2});
    CHECK(std::abs(fast - slow) <= 1e-3);
    CHECK(slow <= fast + 1e-6);
  }
  const auto m = random_hermitian(6, rng);
  const double fast = product_max(m, {2, 3}).value;
  const double slow = product_max_oracle(m, {2, 3});
  CHECK(std::abs(fast - slow) <= 1e-3);
  CHECK(slow <= fast + 1e-6);
}

TEST_CASE("product_max is deterministic and monotone", "[identifiers][optimizer]") {
  Rng rng(5);
  const auto m = random_hermitian(9, rng);
  const auto a = product_max(m, {3, 3});
  const auto b = product_max(m, {3, 3});
  CHECK(a.value == b.value);
  CHECK(a.worst_step >= -1e-12);
  CHECK_THAT(expectation(m, kron(a.x, a.y)).real(), WithinAbs(a.value, 1e-10));
}

TEST_CASE("identifier values on named states", "[identifiers]") {
  const auto g = standard_metric({2, 2});
  const auto s = identifier_value(g, singlet());
  CHECK_THAT(s.omega_tilde0, WithinAbs(0.25, 1e-10));
  CHECK_THAT(s.self_overlap, WithinAbs(0.75, 1e-14));
  CHECK_THAT(s.omega, WithinAbs(-0.5, 1e-10));
  CHECK(s.detected);
  CHECK(s.omega == s.omega_tilde0 - s.self_overlap);

  for (double v : {0.0, 0.2, 0.3, 0.34, 0.5, 0.8, 1.0}) {
    const auto r = identifier_value(g, werner(v));
    CHECK_THAT(r.omega, WithinAbs((v - 3 * v * v) / 4, 1e-10));
    CHECK(r.detected == (v > 1.0 / 3.0));
  }

  const auto pg = pptgen_gmap();
  for (auto kind : {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus, BellKind::PsiMinus}) {
    const auto rho = bell_state(kind);
    const auto t = correlation_tensor(rho, {2, 2});
    const double sum = t(1, 1) + t(2, 2) + t(3, 3);
    CHECK(identifier_value(pg, rho).detected == (sum < -1));
    if (kind == BellKind::PsiMinus) CHECK_THAT(sum, WithinAbs(-3.0, 1e-14));
    if (kind == BellKind::PhiPlus) CHECK_THAT(sum, WithinAbs(1.0, 1e-14));
  }
  CHECK(identifier_value(pg, singlet()).detected);
  CHECK_FALSE(identifier_value(pg, bell_state(BellKind::PhiPlus)).detected);
}

TEST_CASE("sign criterion", "[identifiers]") {
  const auto s = sign_criterion(singlet(), {2, 2});
  CHECK(s.detected);
  CHECK_THAT(*s.lhs, WithinAbs(1.0, 1e-10));
  CHECK_THAT(*s.rhs, WithinAbs(3.0, 1e-14));

  const auto m = sign_criterion(maximally_mixed(4), {2, 2});
  CHECK_FALSE(m.detected);
  CHECK_THAT(*m.lhs, WithinAbs(0.0, 1e-14));
  CHECK_THAT(*m.rhs, WithinAbs(0.0, 1e-14));

  Rng rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int checked = 0;
  while (checked < 60) {
    const double p = u(rng);
    const double q = u(rng);
    const double r = u(rng);
    ComplexMatrix rho;
    try {
      rho = weyl_state(p, q, r);
    } catch (const Error&) {
      continue;
    }
    const double l1 = std::abs(p) + std::abs(q) + std::abs(r);
    if (std::abs(l1 - 1.0) < 1e-6) continue;
    CHECK(sign_criterion(rho, {2, 2}).detected == (l1 > 1.0));
    ++checked;
  }
}

TEST_CASE("closed-form boundaries", "[identifiers]") {
  CHECK_THAT(bell_diagonal_boundary(1, 0), WithinAbs(-2.0, 1e-15));
  CHECK_THAT(bell_diagonal_boundary(0.5, 0.5), WithinAbs(0.0, 1e-15));
  CHECK_THAT(bell_diagonal_boundary(0, 0), WithinAbs(0.0, 1e-15));
  CHECK_THAT(weyl_condition(0, 0, 0), WithinAbs(0.0, 1e-15));
  CHECK_THAT(weyl_condition(-1, -1, -1), WithinAbs(2.0, 1e-15));

  const auto g = standard_metric({2, 2});
  // The identifier is ground truth; compare on points away from the boundary.
  for (double a = 0.0; a <= 1.0; a += 0.125)
    for (double b = 0.0; a + b <= 1.0; b += 0.125) {
      const double f = bell_diagonal_boundary(a, b);
      if (std::abs(f) < 1e-9) continue;
      CHECK(identifier_value(g, bell_diagonal(a, b)).detected == (f < 0));
    }
  for (double v : {0.1, 0.3, 0.4, 0.9})
    CHECK(identifier_value(g, weyl_state(v, -v, v)).detected == (weyl_condition(v, -v, v) > 0));
  // omega = -weyl_condition / 4 on Weyl states.
  Rng rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n = 0; n < 40; ++n) {
    const double p = u(rng);
    const double q = u(rng);
    const double r = u(rng);
    ComplexMatrix rho;
    try {
      rho = weyl_state(p, q, r);
    } catch (const Error&) {
      continue;
    }
    CHECK_THAT(identifier_value(g, rho).omega, WithinAbs(-weyl_condition(p, q, r) / 4, 1e-9));
  }
}

TEST_CASE("soundness on separable states", "[identifiers]") {
  for (Dims dims : {Dims{2, 2}, Dims{2, 3}}) {
    const auto basis = gell_mann_product_basis(dims);
    const std::vector<GMap> maps{standard_metric(dims, basis), sign_gmap(dims, basis), cubic_gmap(dims, basis)};
    for (std::uint64_t s = 0; s < 40; ++s) {
      const auto rho = random_separable(dims, 1 + s % 4, 500 + s);
      for (const auto& g : maps) CHECK_FALSE(identifier_value(g, rho).detected);
      if (dims == Dims{2, 2}) CHECK_FALSE(identifier_value(pptgen_gmap(), rho).detected);
    }
  }
}
