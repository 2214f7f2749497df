#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "entid/descriptor.hpp"

using namespace entid;

namespace {

std::string error_of(const std::string& text) {
  try {
    (void)parse_state_spec(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("family descriptors", "[descriptor]") {
  const auto w = parse_state_spec("werner v=0.5");
  CHECK(w.family == "werner");
  CHECK(w.params.at("v") == 0.5);
  CHECK(w.dims == Dims{2, 2});
  CHECK_FALSE(w.three_qubit);
  CHECK(max_abs_diff(make_state(w), werner(0.5)) == 0.0);

  CHECK(max_abs_diff(make_state(parse_state_spec("singlet")), singlet()) == 0.0);
  CHECK(max_abs_diff(make_state(parse_state_spec("bell phi+")), bell_state(BellKind::PhiPlus)) == 0.0);
  CHECK(max_abs_diff(make_state(parse_state_spec("weyl p=0.3 q=-0.2 r=0.5")), weyl_state(0.3, -0.2, 0.5)) == 0.0);

  const auto q = parse_state_spec("qutrit_werner v=0.6 alpha=0.8");
  CHECK(q.dims == Dims{3, 3});
  CHECK(q.params.at("beta") == std::numbers::pi / 4);

  const auto wn = parse_state_spec("w_noise v=0.7");
  CHECK(wn.three_qubit);
  CHECK(wn.dims == Dims{4, 2});

  const auto r = parse_state_spec("random d=6 seed=3");
  CHECK(r.dims == Dims{2, 3});
  CHECK(max_abs_diff(make_state(r), random_state(6, 3)) == 0.0);
  CHECK(parse_state_spec("random d=6 seed=3 dims=3x2").dims == Dims{3, 2});
  CHECK(parse_state_spec("pure d=8 dims=2x4").dims == Dims{2, 4});
  CHECK_FALSE(parse_state_spec("pure d=8 dims=2x4").three_qubit);
}

TEST_CASE("descriptor errors name the offending token", "[descriptor]") {
  CHECK(error_of("wernr v=0.5").find("wernr") != std::string::npos);
  CHECK(error_of("werner v=abc").find("v=abc") != std::string::npos);
  CHECK(error_of("werner x=0.5").find("x=0.5") != std::string::npos);
  CHECK(error_of("werner 0.5").find("0.5") != std::string::npos);
  CHECK(error_of("werner v=0.5 v=0.6").find("v=0.6") != std::string::npos);
  CHECK(error_of("bell chi+").find("chi+") != std::string::npos);
  CHECK(error_of("random d=6 dims=2y3").find("dims=2y3") != std::string::npos);
  CHECK(error_of("werner").find("'v'") != std::string::npos);
  CHECK(error_of("random d=5").find("dims=AxB") != std::string::npos);
  CHECK_FALSE(error_of("random d=6 dims=2x2").empty());
  CHECK_FALSE(error_of("").empty());
  CHECK_THROWS_AS(make_state(parse_state_spec("werner v=1.5")), Error);
}

TEST_CASE("matrix literal files", "[descriptor]") {
  const auto path = temp_path("entid_test_state.txt");
  const auto rho = random_state(6, 12);
  {
    std::ofstream out(path);
    out.precision(17);
    out << 6 << '\n';
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) out << rho(i, j).real() << ' ' << rho(i, j).imag() << '\n';
  }
  const auto spec = parse_state_spec("file=" + path);
  CHECK(spec.family == "file");
  CHECK(spec.dims == Dims{2, 3});
  CHECK(max_abs_diff(make_state(spec), rho) < 1e-15);
  CHECK(parse_state_spec("file=" + path + " dims=3x2").dims == Dims{3, 2});

  const auto bad = temp_path("entid_test_bad.txt");
  {
    std::ofstream out(bad);
    out << "2\n1 0\n0 0\n0 0\n";
  }
  CHECK_THROWS_WITH(read_matrix_literal(bad), Catch::Matchers::ContainsSubstring("ran out at entry 4"));
  {
    std::ofstream out(bad);
    out << "4\n";
    for (int k = 0; k < 16; ++k) out << (k == 0 ? "2 0\n" : "0 0\n");
  }
  CHECK_THROWS_WITH(make_state(parse_state_spec("file=" + bad)), Catch::Matchers::ContainsSubstring("trace"));
  CHECK_THROWS_AS(read_matrix_literal(temp_path("entid_missing_file.txt")), Error);
  std::remove(path.c_str());
  std::remove(bad.c_str());
}
