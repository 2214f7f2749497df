#pragma once

// Three-qubit states read across a bipartition, the full-correlation metric
// identifier per cut, the induced map per cut, and threshold extraction.

#include <array>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "entid/bases.hpp"
#include "entid/cj_maps.hpp"
#include "entid/identifier.hpp"
#include "entid/matrix.hpp"
#include "entid/product_max.hpp"

namespace entid {

/// Biseparability bound for the noisy W state, quoted from the literature.
inline constexpr double kWNoiseBiseparabilityBound = 0.521;

/// Qubits order[0..split) form the left factor, the rest the right factor.
/// Qubits are numbered 0, 1, 2; the textual form uses 1, 2, 3.
struct Bipartition {
  std::array<int, 3> order{0, 1, 2};
  int split = 2;

  [[nodiscard]] Dims dims() const {
    return {std::size_t{1} << split, std::size_t{1} << (3 - split)};
  }

  [[nodiscard]] std::string to_string() const {
    std::string s;
    for (int p = 0; p < 3; ++p) {
      if (p == split) s += '|';
      s += static_cast<char>('1' + order[p]);
    }
    return s;
  }

  /// "12|3", "13|2", "1|23", ... Digits within a group are sorted.
  static Bipartition parse(std::string_view text) {
    const auto bar = text.find('|');
    if (bar == std::string_view::npos || text.find('|', bar + 1) != std::string_view::npos) {
      throw Error("Bipartition: expected one '|' in '" + std::string(text) + "'");
    }
    std::array<bool, 3> seen{};
    Bipartition b;
    int pos = 0;
    const auto take = [&](std::string_view group) {
      std::array<bool, 3> here{};
      for (char c : group) {
        if (c < '1' || c > '3') throw Error("Bipartition: invalid qubit '" + std::string(1, c) + "'");
        const int q = c - '1';
        if (seen[q]) throw Error("Bipartition: qubit " + std::string(1, c) + " listed twice");
        seen[q] = here[q] = true;
      }
      for (int q = 0; q < 3; ++q)
        if (here[q]) b.order[pos++] = q;
    };
    const auto left = text.substr(0, bar);
    const auto right = text.substr(bar + 1);
    if (left.empty() || right.empty()) throw Error("Bipartition: both groups must be nonempty");
    take(left);
    b.split = pos;
    take(right);
    if (pos != 3) throw Error("Bipartition: every qubit must appear once in '" + std::string(text) + "'");
    return b;
  }
};

inline std::array<Bipartition, 3> all_bipartitions() {
  return {Bipartition::parse("12|3"), Bipartition::parse("13|2"), Bipartition::parse("23|1")};
}

namespace detail {

/// Entry n of the result is the original basis index read by flattened index n.
inline std::array<std::size_t, 8> cut_index_map(const Bipartition& cut) {
  std::array<bool, 3> seen{};
  for (int q : cut.order) {
    if (q < 0 || q > 2 || seen[q]) throw Error("bipartition_flatten: order is not a permutation");
    seen[q] = true;
  }
  if (cut.split < 1 || cut.split > 2) throw Error("bipartition_flatten: split must be 1 or 2");
  std::array<std::size_t, 8> map{};
  for (std::size_t n = 0; n < 8; ++n) {
    std::size_t old = 0;
    for (int p = 0; p < 3; ++p) {
      const std::size_t bit = (n >> (2 - p)) & 1U;
      old |= bit << (2 - cut.order[p]);
    }
    map[n] = old;
  }
  return map;
}

}  // namespace detail

/// Reorders qubits so that new qubit p is old qubit order[p] (qubit 0 most significant).
inline ComplexMatrix bipartition_flatten(const ComplexMatrix& rho, const Bipartition& cut) {
  if (rho.dim() != 8) throw Error("bipartition_flatten: expected an 8x8 matrix");
  const auto map = detail::cut_index_map(cut);
  ComplexMatrix out(8);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) out(i, j) = rho(map[i], map[j]);
  return out;
}

inline ComplexMatrix bipartition_flatten_inverse(const ComplexMatrix& flat, const Bipartition& cut) {
  if (flat.dim() != 8) throw Error("bipartition_flatten_inverse: expected an 8x8 matrix");
  const auto map = detail::cut_index_map(cut);
  ComplexMatrix out(8);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) out(map[i], map[j]) = flat(i, j);
  return out;
}

/// G[rho] = 1/8 sum_{i,j,k>=1} T_ijk s_i (x) s_j (x) s_k
inline ComplexMatrix tripartite_metric_operator(const ComplexMatrix& rho) {
  const auto t = tripartite_correlation_tensor(rho);
  const auto p = gell_mann_basis(2);
  ComplexMatrix out(8);
  for (std::size_t i = 1; i < 4; ++i)
    for (std::size_t j = 1; j < 4; ++j) {
      const ComplexMatrix pij = kron(p[i], p[j]);
      for (std::size_t k = 1; k < 4; ++k) {
        const double c = t(i, j, k);
        if (c == 0.0) continue;
        out += (0.125 * c) * kron(pij, p[k]);
      }
    }
  return out.hermitian_part();
}

/// omega~0 maximizes over pure states product across the cut; the merged side
/// ranges over all pure states of its four-dimensional space.
inline IdentifierResult metric_identifier_bipartition(const ComplexMatrix& rho, const Bipartition& cut,
                                                      const ProductMaxOptions& opts = {}) {
  const ComplexMatrix g = bipartition_flatten(tripartite_metric_operator(rho), cut);
  return identifier_from_operator(g, bipartition_flatten(rho, cut), cut.dims(), opts);
}

inline WitnessOperator witness_bipartition(const ComplexMatrix& rho, const Bipartition& cut,
                                           const ProductMaxOptions& opts = {}) {
  const ComplexMatrix g = bipartition_flatten(tripartite_metric_operator(rho), cut);
  const auto pm = product_max(g, cut.dims(), opts);
  return witness_from_operator(g, pm.value, cut.dims(), "metric3:" + cut.to_string());
}

/// A verdict here certifies bipartite entanglement across the cut, never
/// genuine multipartite entanglement.
inline SpectrumVerdict map_condition_bipartition(const ComplexMatrix& generator, const ComplexMatrix& target,
                                                 const Bipartition& cut,
                                                 const ProductMaxOptions& opts = {}) {
  if (target.dim() != 8) throw Error("map_condition_bipartition: expected an 8x8 target");
  return map_condition(witness_bipartition(generator, cut, opts), bipartition_flatten(target, cut),
                       cut.dims());
}

/// Rejected across every cut.
inline bool genuine_metric_verdict(const ComplexMatrix& rho, const ProductMaxOptions& opts = {}) {
  for (const auto& cut : all_bipartitions())
    if (!metric_identifier_bipartition(rho, cut, opts).detected) return false;
  return true;
}

struct ThresholdResult {
  double threshold = 0.0;
  double tol = 0.0;
  /// true when detection holds above the threshold.
  bool detects_above = true;
  std::vector<double> sample_points;
  std::vector<bool> sample_verdicts;
  int evaluations = 0;
};

inline constexpr int kThresholdSamples = 16;

/// Samples the verdict at 16 points, requires a single transition, then bisects
/// the bracketing cell until it is narrower than tol.
inline ThresholdResult threshold_scan(const std::function<bool(double)>& detected, double lo, double hi,
                                      double tol) {
  if (!(lo < hi)) throw Error("threshold_scan: need lo < hi");
  if (!(tol > 0.0)) throw Error("threshold_scan: tol must be positive");
  ThresholdResult r;
  r.tol = tol;
  for (int i = 0; i < kThresholdSamples; ++i) {
    const double v = lo + (hi - lo) * i / (kThresholdSamples - 1);
    r.sample_points.push_back(v);
    r.sample_verdicts.push_back(detected(v));
    ++r.evaluations;
  }
  int changes = 0;
  int cell = -1;
  for (int i = 1; i < kThresholdSamples; ++i)
    if (r.sample_verdicts[i] != r.sample_verdicts[i - 1]) {
      ++changes;
      cell = i - 1;
    }
  if (changes != 1) {
    std::ostringstream msg;
    msg << "threshold_scan: " << (changes == 0 ? "no transition" : "non-monotone verdicts")
        << " on [" << lo << ", " << hi << "]; samples:";
    for (int i = 0; i < kThresholdSamples; ++i)
      msg << ' ' << r.sample_points[i] << '=' << (r.sample_verdicts[i] ? 1 : 0);
    throw Error(msg.str());
  }
  r.detects_above = r.sample_verdicts[cell + 1];
  double a = r.sample_points[cell];
  double b = r.sample_points[cell + 1];
  while (b - a >= tol) {
    const double mid = 0.5 * (a + b);
    ++r.evaluations;
    if (detected(mid) == r.detects_above) {
      b = mid;
    } else {
      a = mid;
    }
  }
  r.threshold = 0.5 * (a + b);
  return r;
}

}  // namespace entid
