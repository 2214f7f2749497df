#include <catch_amalgamated.hpp>

#include <algorithm>

#include "entid/multipartite.hpp"
#include "entid/random.hpp"
#include "entid/states.hpp"
#include "oracles.hpp"

using namespace entid;
using Catch::Matchers::WithinAbs;

namespace {

ComplexMatrix basis_projector(int a, int b, int c) {
  ComplexVector v(8);
  v[static_cast<std::size_t>(4 * a + 2 * b + c)] = 1.0;
  return ComplexMatrix::projector(v);
}

}  // namespace

TEST_CASE("bipartition parsing", "[multipartite]") {
  CHECK(Bipartition::parse("12|3").to_string() == "12|3");
  CHECK(Bipartition::parse("31|2").to_string() == "13|2");
  CHECK(Bipartition::parse("1|23").dims() == Dims{2, 4});
  CHECK(Bipartition::parse("23|1").dims() == Dims{4, 2});
  CHECK_THROWS_AS(Bipartition::parse("123"), Error);
  CHECK_THROWS_AS(Bipartition::parse("12|2"), Error);
  CHECK_THROWS_AS(Bipartition::parse("12|"), Error);
  CHECK_THROWS_AS(Bipartition::parse("14|2"), Error);
}

TEST_CASE("bipartition flattening", "[multipartite]") {
  const auto rho = random_state(8, 4);
  CHECK(max_abs_diff(bipartition_flatten(rho, Bipartition::parse("12|3")), rho) == 0.0);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        CHECK(max_abs_diff(bipartition_flatten(basis_projector(a, b, c), Bipartition::parse("13|2")),
                           basis_projector(a, c, b)) == 0.0);
        CHECK(max_abs_diff(bipartition_flatten(basis_projector(a, b, c), Bipartition::parse("23|1")),
                           basis_projector(b, c, a)) == 0.0);
      }
  for (const auto& cut : all_bipartitions()) {
    const auto flat = bipartition_flatten(rho, cut);
    const auto want = oracle::power_sums(rho);
    const auto got = oracle::power_sums(flat);
    for (std::size_t k = 0; k < want.size(); ++k) CHECK_THAT(got[k], WithinAbs(want[k], 1e-12));
    CHECK(max_abs_diff(bipartition_flatten_inverse(flat, cut), rho) == 0.0);
  }
  CHECK_THROWS_AS(bipartition_flatten(random_state(4, 1), Bipartition::parse("12|3")), Error);
}

TEST_CASE("tripartite metric operator", "[multipartite]") {
  CHECK(tripartite_metric_operator(maximally_mixed(8)).max_abs() < 1e-15);
  // The only full correlation of |000> is T_333 = 1.
  const auto g = tripartite_metric_operator(basis_projector(0, 0, 0));
  const auto z = oracle::pauli(3);
  CHECK(max_abs_diff(g, 0.125 * kron(kron(z, z), z)) < 1e-15);
}

TEST_CASE("cut-wise identifier", "[multipartite]") {
  for (const auto& cut : all_bipartitions()) {
    CHECK_FALSE(metric_identifier_bipartition(basis_projector(0, 0, 0), cut).detected);
    CHECK_FALSE(metric_identifier_bipartition(maximally_mixed(8), cut).detected);
  }
  for (double v : {0.3, 0.7, 1.0}) {
    const auto rho = w_noise(v);
    std::vector<double> omegas;
    for (const auto& cut : all_bipartitions()) omegas.push_back(metric_identifier_bipartition(rho, cut).omega);
    CHECK_THAT(omegas[1], WithinAbs(omegas[0], 1e-8));
    CHECK_THAT(omegas[2], WithinAbs(omegas[0], 1e-8));
  }
  CHECK(genuine_metric_verdict(w_noise(1.0)));
  CHECK_FALSE(genuine_metric_verdict(w_noise(0.3)));
  CHECK_FALSE(map_condition_bipartition(maximally_mixed(8), maximally_mixed(8), Bipartition::parse("12|3")).detected);
}

TEST_CASE("biproduct soundness", "[multipartite]") {
  const auto cut = Bipartition::parse("12|3");
  for (std::uint64_t s = 0; s < 20; ++s) {
    ComplexMatrix rho(8);
    const std::size_t terms = 1 + s % 4;
    for (std::size_t t = 0; t < terms; ++t)
      rho += (1.0 / static_cast<double>(terms)) * kron(random_pure(4, 10 * s + t), random_pure(2, 1000 + 10 * s + t));
    CHECK_FALSE(metric_identifier_bipartition(rho, cut).detected);
  }
}

TEST_CASE("threshold_scan", "[multipartite]") {
  const auto r = threshold_scan([](double v) { return ppt_check(werner(v), {2, 2}).detected; }, 0.0, 1.0, 1e-7);
  CHECK_THAT(r.threshold, WithinAbs(1.0 / 3.0, 1e-6));
  CHECK(r.detects_above);
  CHECK(r.sample_points.size() == 16);

  const auto below = threshold_scan([](double v) { return v < 0.25; }, 0.0, 1.0, 1e-8);
  CHECK_FALSE(below.detects_above);
  CHECK_THAT(below.threshold, WithinAbs(0.25, 1e-8));

  CHECK_THROWS_AS(threshold_scan([](double) { return true; }, 0.0, 1.0, 1e-6), Error);
  CHECK_THROWS_AS(threshold_scan([](double v) { return v > 0.2 && v < 0.6; }, 0.0, 1.0, 1e-6), Error);
  CHECK_THROWS_AS(threshold_scan([](double v) { return v > 0.5; }, 1.0, 0.0, 1e-6), Error);
}

TEST_CASE("noisy W thresholds", "[multipartite]") {
  const auto cut = Bipartition::parse("12|3");
  const auto metric = threshold_scan(
      [&](double v) { return metric_identifier_bipartition(w_noise(v), cut).detected; }, 0.0, 1.0, 1e-6);
  CHECK_THAT(metric.threshold, WithinAbs(0.636, 0.005));
  const auto map = threshold_scan(
      [&](double v) { return map_condition_bipartition(w_noise(v), w_noise(v), cut).detected; }, 0.0, 1.0, 1e-6);
  CHECK_THAT(map.threshold, WithinAbs(0.456, 0.005));
  CHECK(map.threshold < kWNoiseBiseparabilityBound);
}
