#pragma once

// Textual state descriptors, e.g.
//
//   werner v=0.5
//   bell phi+              (phi+, phi-, psi+, psi-; "singlet" is psi-)
//   bell_diagonal a=0.3 b=0.2
//   weyl p=0.3 q=-0.2 r=0.5
//   qutrit_werner v=0.6 alpha=0.8 [beta=0.785]
//   w_noise v=0.7
//   random d=4 seed=3 [dims=2x2]     (Ginibre)
//   pure d=4 seed=3 [dims=2x2]
//   file=state.txt [dims=2x3]        (matrix literal)
//
// A matrix literal file holds d on the first line, then d^2 lines "re im" in
// row-major order.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "entid/matrix.hpp"
#include "entid/states.hpp"

namespace entid {

struct StateSpec {
  std::string family;
  std::map<std::string, double> params;
  /// Bell label for family "bell", path for family "file".
  std::string label;
  Dims dims{2, 2};
  /// Three-qubit states are analyzed across a cut.
  bool three_qubit = false;
  std::string text;
};

inline const std::map<std::string, std::vector<std::string>>& family_parameters() {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"bell", {}},
      {"bell_diagonal", {"a", "b"}},
      {"weyl", {"p", "q", "r"}},
      {"werner", {"v"}},
      {"qutrit_werner", {"v", "alpha", "beta"}},
      {"w_noise", {"v"}},
      {"random", {"d", "seed"}},
      {"pure", {"d", "seed"}},
      {"file", {}},
  };
  return table;
}

namespace detail {

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

inline double parse_real(const std::string& value, const std::string& token) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size() || !std::isfinite(v)) throw Error("");
    return v;
  } catch (const std::exception&) {
    throw Error("cannot parse '" + token + "': expected a real number");
  }
}

/// "2x3" -> {2, 3}
inline Dims parse_dims(const std::string& value, const std::string& token) {
  const auto x = value.find('x');
  if (x == std::string::npos) throw Error("cannot parse '" + token + "': expected dims like 2x3");
  const double a = parse_real(value.substr(0, x), token);
  const double b = parse_real(value.substr(x + 1), token);
  if (a < 2 || b < 2 || a != std::floor(a) || b != std::floor(b)) {
    throw Error("cannot parse '" + token + "': local dimensions must be integers >= 2");
  }
  return {static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
}

inline std::optional<Dims> default_dims(std::size_t d) {
  switch (d) {
    case 4: return Dims{2, 2};
    case 6: return Dims{2, 3};
    case 8: return Dims{4, 2};
    case 9: return Dims{3, 3};
    default: return std::nullopt;
  }
}

inline std::size_t integer_param(const StateSpec& s, const std::string& name) {
  const double v = s.params.at(name);
  if (v < 0 || v != std::floor(v)) throw Error(s.family + ": " + name + " must be a nonnegative integer");
  return static_cast<std::size_t>(v);
}

}  // namespace detail

inline ComplexMatrix read_matrix_literal(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open matrix file '" + path + "'");
  long long d = 0;
  if (!(in >> d) || d < 2) throw Error("matrix file '" + path + "': first line must be a dimension >= 2");
  ComplexMatrix m(static_cast<std::size_t>(d));
  for (long long i = 0; i < d; ++i)
    for (long long j = 0; j < d; ++j) {
      double re = 0.0;
      double im = 0.0;
      if (!(in >> re >> im)) {
        throw Error("matrix file '" + path + "': expected " + std::to_string(d * d) +
                    " 're im' lines, ran out at entry " + std::to_string(i * d + j + 1));
      }
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = Complex(re, im);
    }
  std::string extra;
  if (in >> extra) throw Error("matrix file '" + path + "': trailing content '" + extra + "'");
  return m;
}

inline StateSpec parse_state_spec(std::string_view text) {
  const auto tokens = detail::split_ws(text);
  if (tokens.empty()) throw Error("empty state descriptor");
  StateSpec s;
  s.text = std::string(text);
  std::size_t first_param = 1;
  std::optional<Dims> dims_override;

  const std::string& head = tokens[0];
  if (head.rfind("file=", 0) == 0) {
    s.family = "file";
    s.label = head.substr(5);
  } else if (head == "singlet") {
    s.family = "bell";
    s.label = "psi-";
  } else if (family_parameters().count(head) != 0) {
    s.family = head;
  } else {
    throw Error("unknown state family '" + head + "'");
  }
  if (s.family == "bell" && s.label.empty()) {
    if (tokens.size() < 2) throw Error("bell: missing label (phi+, phi-, psi+, psi-)");
    s.label = tokens[1];
    if (s.label != "phi+" && s.label != "phi-" && s.label != "psi+" && s.label != "psi-") {
      throw Error("unknown Bell label '" + s.label + "'");
    }
    first_param = 2;
  }

  const auto& allowed = family_parameters().at(s.family);
  for (std::size_t i = first_param; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) throw Error("cannot parse '" + tok + "': expected name=value");
    const std::string name = tok.substr(0, eq);
    const std::string value = tok.substr(eq + 1);
    if (name == "dims") {
      dims_override = detail::parse_dims(value, tok);
      continue;
    }
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
      throw Error("unknown parameter '" + tok + "' for family " + s.family);
    }
    if (s.params.count(name) != 0) throw Error("parameter '" + tok + "' given twice");
    s.params[name] = detail::parse_real(value, tok);
  }

  if (s.family == "qutrit_werner" && s.params.count("beta") == 0) s.params["beta"] = std::numbers::pi / 4;
  if (s.family == "random" || s.family == "pure") {
    if (s.params.count("seed") == 0) s.params["seed"] = 0;
  }
  for (const auto& name : allowed)
    if (s.params.count(name) == 0) throw Error(s.family + ": missing parameter '" + name + "'");

  std::size_t total = 4;
  if (s.family == "qutrit_werner") total = 9;
  if (s.family == "w_noise") total = 8;
  if (s.family == "random" || s.family == "pure") total = detail::integer_param(s, "d");
  if (s.family == "file") total = read_matrix_literal(s.label).dim();
  s.three_qubit = total == 8 && (s.family == "w_noise" || !dims_override);

  if (dims_override) {
    if (dims_override->total() != total) {
      throw Error("dims " + std::to_string(dims_override->a) + "x" + std::to_string(dims_override->b) +
                  " do not match dimension " + std::to_string(total));
    }
    if (s.family != "random" && s.family != "pure" && s.family != "file") {
      throw Error("dims cannot be set for family " + s.family);
    }
    s.dims = *dims_override;
  } else if (const auto d = detail::default_dims(total)) {
    s.dims = *d;
  } else {
    throw Error("cannot infer a bipartition for dimension " + std::to_string(total) + "; pass dims=AxB");
  }
  return s;
}

inline ComplexMatrix make_state(const StateSpec& s) {
  const auto& p = s.params;
  if (s.family == "bell") {
    if (s.label == "phi+") return bell_state(BellKind::PhiPlus);
    if (s.label == "phi-") return bell_state(BellKind::PhiMinus);
    if (s.label == "psi+") return bell_state(BellKind::PsiPlus);
    return bell_state(BellKind::PsiMinus);
  }
  if (s.family == "bell_diagonal") return bell_diagonal(p.at("a"), p.at("b"));
  if (s.family == "weyl") return weyl_state(p.at("p"), p.at("q"), p.at("r"));
  if (s.family == "werner") return werner(p.at("v"));
  if (s.family == "qutrit_werner") return qutrit_werner(p.at("v"), p.at("alpha"), p.at("beta"));
  if (s.family == "w_noise") return w_noise(p.at("v"));
  if (s.family == "random") {
    return random_state(detail::integer_param(s, "d"), detail::integer_param(s, "seed"));
  }
  if (s.family == "pure") return random_pure(detail::integer_param(s, "d"), detail::integer_param(s, "seed"));
  if (s.family == "file") {
    ComplexMatrix m = read_matrix_literal(s.label);
    if (!m.is_hermitian()) throw Error("matrix file '" + s.label + "': matrix is not Hermitian");
    if (std::abs(m.trace() - Complex(1.0)) > 1e-8) throw Error("matrix file '" + s.label + "': trace is not 1");
    detail::require_psd(m, "matrix file");
    return m.hermitian_part();
  }
  throw Error("unknown state family '" + s.family + "'");
}

}  // namespace entid
