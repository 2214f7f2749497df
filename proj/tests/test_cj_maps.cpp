#include <catch_amalgamated.hpp>

#include <algorithm>

#include "entid/cj_maps.hpp"
#include "entid/random.hpp"
#include "entid/states.hpp"
#include "oracles.hpp"

using namespace entid;
using Catch::Matchers::WithinAbs;

namespace {

/// Compares a spectrum against expected values through power sums, so the
/// check does not depend on the library eigensolver.
void require_spectrum(const ComplexMatrix& m, std::vector<double> want, double tol) {
  const auto got = oracle::power_sums(m);
  const auto ref = oracle::power_sums(want);
  for (std::size_t k = 0; k < got.size(); ++k) CHECK_THAT(got[k], WithinAbs(ref[k], tol));
  auto eig = eigenvalues(m);
  std::sort(eig.begin(), eig.end());
  std::sort(want.begin(), want.end());
  for (std::size_t k = 0; k < eig.size(); ++k) CHECK_THAT(eig[k], WithinAbs(want[k], tol));
}

WitnessOperator raw_witness(const ComplexMatrix& m, Dims dims) { return {m, 0.0, dims, "raw"}; }

ComplexMatrix pauli_sum() {
  ComplexMatrix s(4);
  for (int i = 1; i < 4; ++i) s += kron(oracle::pauli(i), oracle::pauli(i));
  return s;
}

}  // namespace

TEST_CASE("singlet witness", "[cj]") {
  const auto w = witness_operator(standard_metric({2, 2}), singlet());
  CHECK(max_abs_diff(w.matrix, 0.25 * (ComplexMatrix::identity(4) + pauli_sum())) < 1e-10);
  require_spectrum(w.matrix, {-0.5, 0.5, 0.5, 0.5}, 1e-9);
  CHECK(block_positivity_sample(w, 10000, 1) >= -1e-9);

  const auto c = witness_coefficients(w, gell_mann_basis(2), gell_mann_basis(2));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK_THAT(c(i, j), WithinAbs(i == j ? 1.0 : 0.0, 1e-10));

  // Tr(rho W) = omega.
  const auto id = identifier_value(standard_metric({2, 2}), singlet());
  CHECK_THAT(trace_product(singlet(), w.matrix).real(), WithinAbs(id.omega, 1e-12));
}

TEST_CASE("PPT generator witness has identity coefficients", "[cj]") {
  const auto w = witness_operator(pptgen_gmap(), random_state(4, 9));
  CHECK(max_abs_diff(w.matrix, 0.25 * (ComplexMatrix::identity(4) + pauli_sum())) < 1e-10);
  const auto c = witness_coefficients(w, gell_mann_basis(2), gell_mann_basis(2));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK_THAT(c(i, j), WithinAbs(i == j ? 1.0 : 0.0, 1e-10));
  Rng rng(4);
  for (int n = 0; n < 10; ++n) {
    const auto l = random_hermitian(2, rng);
    CHECK(max_abs_diff(lambda_dual_apply(w, l), 0.5 * l) < 1e-10);
  }
}

TEST_CASE("trivial witnesses", "[cj]") {
  const auto w = witness_operator(standard_metric({2, 2}), maximally_mixed(4));
  CHECK(w.matrix.max_abs() < 1e-15);
  const auto c = witness_coefficients(w, gell_mann_basis(2), gell_mann_basis(2));
  for (double x : c.values) CHECK(x == 0.0);
  CHECK_THAT(block_positivity_sample(raw_witness(ComplexMatrix::identity(4), {2, 2}), 100, 2), WithinAbs(1.0, 1e-12));
  CHECK_THAT(block_positivity_sample(raw_witness(-1.0 * ComplexMatrix::identity(4), {2, 2}), 100, 2),
             WithinAbs(-1.0, 1e-12));
  CHECK_THROWS_AS(block_positivity_sample(raw_witness(ComplexMatrix::identity(4), {2, 2}), 0, 2), Error);
}

TEST_CASE("induced map examples", "[cj]") {
  Rng rng(8);
  const auto singlet_w = witness_operator(standard_metric({2, 2}), singlet());
  const auto phi = raw_witness(phi_plus(2), {2, 2});
  const auto id4 = raw_witness(ComplexMatrix::identity(4), {2, 2});
  for (int n = 0; n < 10; ++n) {
    const auto l = random_hermitian(2, rng);
    CHECK(max_abs_diff(lambda_dual_apply(singlet_w, l), 0.5 * l) < 1e-10);
    CHECK(max_abs_diff(lambda_dual_apply(phi, l), l.transpose()) < 1e-14);
    CHECK(max_abs_diff(lambda_dual_apply(id4, l), l.trace() * ComplexMatrix::identity(2)) < 1e-14);
    CHECK(max_abs_diff(lambda_apply(id4, l), l.trace() * ComplexMatrix::identity(2)) < 1e-14);
  }
  CHECK(max_abs_diff(lambda_apply(singlet_w, oracle::pauli(3)), 0.5 * oracle::pauli(3)) < 1e-10);
  CHECK_THROWS_AS(lambda_dual_apply(id4, ComplexMatrix::identity(3)), Error);
  CHECK_THROWS_AS(lambda_apply(raw_witness(ComplexMatrix::identity(6), {2, 3}), ComplexMatrix::identity(3)), Error);
}

TEST_CASE("duality and coefficient forms on random witnesses", "[cj]") {
  Rng rng(31);
  for (Dims dims : {Dims{2, 2}, Dims{2, 3}, Dims{3, 2}}) {
    const auto ba = gell_mann_basis(dims.a);
    const auto bb = gell_mann_basis(dims.b);
    for (int n = 0; n < 10; ++n) {
      const auto w = raw_witness(random_hermitian(dims.total(), rng), dims);
      const auto a1 = random_hermitian(dims.a, rng);
      const auto a2 = random_hermitian(dims.b, rng);
      // Tr(a2 Lambda[a1]) = Tr(Lambda^d[a2] a1)
      const Complex lhs = trace_product(a2, lambda_apply(w, a1));
      const Complex rhs = trace_product(lambda_dual_apply(w, a2), a1);
      CHECK(std::abs(lhs - rhs) < 1e-10);

      const auto c = witness_coefficients(w, ba, bb);
      CHECK(max_abs_diff(lambda_dual_apply(w, a2), lambda_dual_from_coefficients(c, ba, bb, a2)) < 1e-10);
      CHECK(max_abs_diff(lambda_apply(w, a1), lambda_from_coefficients(c, ba, bb, a1)) < 1e-10);
      CHECK(lambda_dual_apply(w, a2).is_hermitian());

      // W = 1/4 sum w_ij s_i (x) s_j.
      ComplexMatrix rebuilt(dims.total());
      for (std::size_t i = 0; i < ba.size(); ++i)
        for (std::size_t j = 0; j < bb.size(); ++j) rebuilt += (0.25 * c(i, j)) * kron(ba[i], bb[j]);
      CHECK(max_abs_diff(rebuilt, w.matrix) < 1e-10);
    }
  }
}

TEST_CASE("map condition eigenvalue lists", "[cj]") {
  const auto g = standard_metric({2, 2});
  require_spectrum(apply_map_condition_operator(witness_operator(g, singlet()), singlet(), {2, 2}),
                   {-0.25, 0.25, 0.25, 0.25}, 1e-9);
  for (double v : {0.1, 0.4, 0.9}) {
    const auto ws = witness_operator(g, singlet());
    const auto wv = witness_operator(g, werner(v));
    require_spectrum(apply_map_condition_operator(ws, werner(v), {2, 2}),
                     {(1 - 3 * v) / 8, (v + 1) / 8, (v + 1) / 8, (v + 1) / 8}, 1e-9);
    require_spectrum(apply_map_condition_operator(wv, werner(v), {2, 2}),
                     {(1 - 3 * v) * v / 8, v * (v + 1) / 8, v * (v + 1) / 8, v * (v + 1) / 8}, 1e-9);
    require_spectrum(apply_map_condition_operator(wv, singlet(), {2, 2}), {-v / 4, v / 4, v / 4, v / 4}, 1e-9);
    CHECK(map_condition(g, singlet(), werner(v)).detected == (v > 1.0 / 3.0));
    CHECK(map_condition(g, werner(v), singlet()).detected);
  }
}

TEST_CASE("PPT check", "[cj]") {
  for (double v : {0.0, 0.2, 0.5, 1.0}) {
    const auto p = ppt_check(werner(v), {2, 2});
    CHECK_THAT(p.min_eig, WithinAbs((1 - 3 * v) / 4, 1e-12));
    CHECK(p.detected == (v > 1.0 / 3.0));
  }
  CHECK_THAT(ppt_check(singlet(), {2, 2}).min_eig, WithinAbs(-0.5, 1e-12));
  for (std::uint64_t s = 0; s < 10; ++s) {
    CHECK_FALSE(ppt_check(kron(random_state(2, s), random_state(3, s + 50)), {2, 3}).detected);
    // Partial transpose against the index-definition oracle.
    const auto rho = random_state(6, s);
    CHECK(max_abs_diff(partial_transpose(rho, {2, 3}, Subsystem::B), oracle::partial_transpose_b(rho, 2, 3)) <
          1e-15);
  }
}

TEST_CASE("maximally entangled operator and phi+", "[cj]") {
  CHECK_THAT(phi_plus(2).trace().real(), WithinAbs(2.0, 1e-15));
  for (std::size_t d : {2, 3}) {
    const auto m = max_entangled_operator(gell_mann_basis(d));
    CHECK(max_abs_diff(oracle::partial_transpose_b(m, d, d), phi_plus(d)) < 1e-12);
  }
  CHECK_THROWS_AS(phi_plus(1), Error);
}

TEST_CASE("Choi isomorphism", "[cj]") {
  const auto b2 = gell_mann_basis(2);
  CHECK(isomorphism_check(standard_metric({2, 2}), singlet(), b2) <= 1e-10);
  CHECK(isomorphism_check(sign_gmap({2, 2}), weyl_state(0.3, -0.2, 0.5), b2) <= 1e-10);
  CHECK(isomorphism_check(pptgen_gmap(), random_state(4, 77), b2) <= 1e-10);
  CHECK(isomorphism_check(standard_metric({3, 3}), random_state(9, 3), gell_mann_basis(3)) <= 1e-10);
  CHECK_THROWS_AS(isomorphism_check(standard_metric({2, 3}), random_state(6, 1), b2), Error);
}

TEST_CASE("identifier detection implies map detection", "[cj]") {
  const auto basis = gell_mann_product_basis({2, 2});
  for (const auto& g : {standard_metric({2, 2}, basis), sign_gmap({2, 2}, basis)}) {
    for (std::uint64_t s = 0; s < 40; ++s) {
      const auto rho = random_state(4, 900 + s);
      const auto id = identifier_value(g, rho);
      const auto m = map_condition(g, rho, rho);
      if (id.detected) CHECK(m.detected);
    }
  }
}

TEST_CASE("map condition soundness on separable targets", "[cj]") {
  const auto g = standard_metric({2, 2});
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto gen = random_state(4, 40 + s);
    const auto target = random_separable({2, 2}, 1 + s % 4, 60 + s);
    CHECK_FALSE(map_condition(g, gen, target).detected);
  }
}
