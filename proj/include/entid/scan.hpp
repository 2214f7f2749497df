#pragma once

// Per-criterion evaluation of a state, grid scans over the state families,
// and threshold extraction along v.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "entid/cj_maps.hpp"
#include "entid/descriptor.hpp"
#include "entid/gmap.hpp"
#include "entid/identifier.hpp"
#include "entid/multipartite.hpp"
#include "entid/states.hpp"

namespace entid {

/// Canonical criterion names; "pptgen-functional" is accepted for "pptgen".
inline const std::vector<std::string>& known_criteria() {
  static const std::vector<std::string> names = {"metric", "sign", "ppt", "map", "pptgen", "cubic"};
  return names;
}

inline std::string canonical_criterion(const std::string& name) {
  if (name == "pptgen-functional") return "pptgen";
  if (std::find(known_criteria().begin(), known_criteria().end(), name) == known_criteria().end()) {
    throw Error("unknown criterion '" + name + "'");
  }
  return name;
}

inline std::vector<std::string> parse_criteria(const std::string& csv) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const auto comma = csv.find(',', start);
    const std::string tok = csv.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (tok.empty()) throw Error("empty criterion in '" + csv + "'");
    const std::string c = canonical_criterion(tok);
    if (std::find(out.begin(), out.end(), c) != out.end()) throw Error("criterion '" + tok + "' given twice");
    out.push_back(c);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

struct EvalOptions {
  ProductMaxOptions optimizer;
  /// Cut used for three-qubit states.
  Bipartition cut = Bipartition::parse("12|3");
};

/// Evaluates criteria on states of one shape; the G-maps are built once.
class CriterionEvaluator {
 public:
  CriterionEvaluator(Dims dims, bool three_qubit, EvalOptions opts = {})
      : dims_(dims), three_qubit_(three_qubit), opts_(std::move(opts)) {
    if (three_qubit_) {
      if (dims_.total() != 8) throw Error("three-qubit evaluation needs an 8-dimensional state");
      return;
    }
    const auto basis = gell_mann_product_basis(dims_);
    metric_.emplace(standard_metric(dims_, basis));
    sign_.emplace(sign_gmap(dims_, basis));
    cubic_.emplace(cubic_gmap(dims_, basis));
    if (dims_ == Dims{2, 2}) pptgen_.emplace(pptgen_gmap(dims_, basis));
  }

  [[nodiscard]] Dims dims() const { return dims_; }
  [[nodiscard]] bool three_qubit() const { return three_qubit_; }

  [[nodiscard]] DetectionReport evaluate(const std::string& criterion, const ComplexMatrix& rho) const {
    const auto start = std::chrono::steady_clock::now();
    DetectionReport r = three_qubit_ ? evaluate_three_qubit(criterion, rho) : evaluate_bipartite(criterion, rho);
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  }

 private:
  static void fill(DetectionReport& r, const IdentifierResult& id) {
    r.detected = id.detected;
    r.omega = id.omega;
    r.omega_tilde0 = id.omega_tilde0;
    r.self_overlap = id.self_overlap;
  }

  [[nodiscard]] DetectionReport evaluate_bipartite(const std::string& criterion, const ComplexMatrix& rho) const {
    detail::check_bipartite(rho, dims_, "evaluate");
    DetectionReport r;
    r.criterion = canonical_criterion(criterion);
    const auto& c = r.criterion;
    if (c == "metric") {
      fill(r, identifier_value(*metric_, rho, opts_.optimizer));
    } else if (c == "cubic") {
      fill(r, identifier_value(*cubic_, rho, opts_.optimizer));
    } else if (c == "sign") {
      const auto id = identifier_value(*sign_, rho, opts_.optimizer);
      fill(r, id);
      const auto t = correlation_tensor(rho, sign_->basis().a(), sign_->basis().b());
      double manhattan = 0.0;
      for (std::size_t i = 1; i < t.shape[0]; ++i)
        for (std::size_t j = 1; j < t.shape[1]; ++j) manhattan += std::abs(t(i, j));
      r.lhs = 4.0 * id.omega_tilde0;
      r.rhs = manhattan;
    } else if (c == "pptgen") {
      if (!pptgen_) throw Error("pptgen is defined for two qubits only");
      fill(r, identifier_value(*pptgen_, rho, opts_.optimizer));
      const auto t = correlation_tensor(rho, pptgen_->basis().a(), pptgen_->basis().b());
      r.lhs = t(1, 1) + t(2, 2) + t(3, 3);
      r.rhs = -1.0;
    } else if (c == "ppt") {
      const auto v = ppt_check(rho, dims_);
      r.detected = v.detected;
      r.ppt_min_eig = v.min_eig;
    } else if (c == "map") {
      const auto w = witness_operator(*metric_, rho, opts_.optimizer);
      const auto v = map_condition(w, rho, dims_);
      r.detected = v.detected;
      r.omega_tilde0 = w.omega_tilde0;
      r.map_min_eig = v.min_eig;
      r.scope = "map induced by the state itself";
    }
    return r;
  }

  [[nodiscard]] DetectionReport evaluate_three_qubit(const std::string& criterion, const ComplexMatrix& rho) const {
    DetectionReport r;
    r.criterion = canonical_criterion(criterion);
    const auto& c = r.criterion;
    const std::string cut = opts_.cut.to_string();
    if (c == "metric") {
      fill(r, metric_identifier_bipartition(rho, opts_.cut, opts_.optimizer));
      r.scope = "not biproduct across cut " + cut;
    } else if (c == "map") {
      const auto w = witness_bipartition(rho, opts_.cut, opts_.optimizer);
      const auto v = map_condition(w, bipartition_flatten(rho, opts_.cut), opts_.cut.dims());
      r.detected = v.detected;
      r.omega_tilde0 = w.omega_tilde0;
      r.map_min_eig = v.min_eig;
      r.scope = "bipartite entanglement across cut " + cut;
    } else if (c == "ppt") {
      const auto v = ppt_check(bipartition_flatten(rho, opts_.cut), opts_.cut.dims());
      r.detected = v.detected;
      r.ppt_min_eig = v.min_eig;
      r.scope = "bipartite entanglement across cut " + cut;
    } else {
      throw Error("criterion '" + c + "' is not available for three-qubit states");
    }
    return r;
  }

  Dims dims_;
  bool three_qubit_;
  EvalOptions opts_;
  std::optional<GMap> metric_;
  std::optional<GMap> sign_;
  std::optional<GMap> cubic_;
  std::optional<GMap> pptgen_;
};

struct StateReport {
  StateSpec spec;
  std::vector<DetectionReport> results;
  double wall_seconds = 0.0;
};

inline StateReport analyze_state(const StateSpec& spec, const std::vector<std::string>& criteria,
                                 const EvalOptions& opts = {}) {
  const auto start = std::chrono::steady_clock::now();
  StateReport report;
  report.spec = spec;
  const ComplexMatrix rho = make_state(spec);
  const CriterionEvaluator eval(spec.dims, spec.three_qubit, opts);
  for (const auto& c : criteria) report.results.push_back(eval.evaluate(c, rho));
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

// ---------------------------------------------------------------------------
// Family scans

struct Axis {
  std::string name;
  double lo = 0.0;
  double hi = 1.0;
  /// Bounds a range must stay within.
  double min = 0.0;
  double max = 1.0;
};

struct FamilyInfo {
  Dims dims;
  bool three_qubit = false;
  std::vector<Axis> axes;
};

inline FamilyInfo family_info(const std::string& family) {
  constexpr double pi = std::numbers::pi;
  if (family == "bell_diagonal") return {{2, 2}, false, {{"a", 0, 1, 0, 1}, {"b", 0, 1, 0, 1}}};
  if (family == "weyl") return {{2, 2}, false, {{"p", -1, 1, -1, 1}, {"q", -1, 1, -1, 1}, {"r", -1, 1, -1, 1}}};
  if (family == "werner") return {{2, 2}, false, {{"v", 0, 1, 0, 1}}};
  if (family == "qutrit_werner") return {{3, 3}, false, {{"v", 0, 1, 0, 1}, {"alpha", 0, pi / 2, 0, 2 * pi}}};
  if (family == "w_noise") return {{4, 2}, true, {{"v", 0, 1, 0, 1}}};
  throw Error("unknown scan family '" + family + "' (bell_diagonal, weyl, werner, qutrit_werner, w_noise)");
}

/// State of a scan family at one grid point; throws Error when unphysical.
inline ComplexMatrix family_state(const std::string& family, const std::vector<double>& x, double beta) {
  if (family == "bell_diagonal") return bell_diagonal(x[0], x[1]);
  if (family == "weyl") return weyl_state(x[0], x[1], x[2]);
  if (family == "werner") return werner(x[0]);
  if (family == "qutrit_werner") return qutrit_werner(x[0], x[1], beta);
  if (family == "w_noise") return w_noise(x[0]);
  throw Error("unknown scan family '" + family + "'");
}

struct ScanConfig {
  std::string family;
  std::vector<std::string> criteria{"metric", "sign", "ppt"};
  int resolution = 41;
  /// Overrides of the default axis ranges.
  std::map<std::string, std::pair<double, double>> ranges;
  double beta = std::numbers::pi / 4;
  EvalOptions eval;
  unsigned threads = 1;
};

struct ScanRow {
  std::vector<double> params;
  bool physical = false;
  std::vector<DetectionReport> results;
};

struct ScanResult {
  std::string family;
  std::vector<std::string> axis_names;
  std::vector<std::string> criteria;
  std::vector<ScanRow> rows;
};

inline std::vector<Axis> scan_axes(const ScanConfig& cfg) {
  auto axes = family_info(cfg.family).axes;
  for (const auto& [name, range] : cfg.ranges) {
    auto it = std::find_if(axes.begin(), axes.end(), [&](const Axis& a) { return a.name == name; });
    if (it == axes.end()) throw Error("family " + cfg.family + " has no parameter '" + name + "'");
    const auto [lo, hi] = range;
    if (!(lo <= hi)) throw Error("range for '" + name + "' has lo > hi");
    if (lo < it->min || hi > it->max) {
      throw Error("range for '" + name + "' leaves the physical domain [" + std::to_string(it->min) + ", " +
                  std::to_string(it->max) + "]");
    }
    it->lo = lo;
    it->hi = hi;
  }
  return axes;
}

inline double grid_value(const Axis& a, int i, int resolution) {
  if (i == resolution - 1) return a.hi;
  return a.lo + (a.hi - a.lo) * i / (resolution - 1);
}

inline ScanResult run_scan(const ScanConfig& cfg) {
  if (cfg.resolution < 2) throw Error("resolution must be at least 2");
  if (cfg.criteria.empty()) throw Error("no criteria selected");
  const auto info = family_info(cfg.family);
  const auto axes = scan_axes(cfg);

  ScanResult out;
  out.family = cfg.family;
  for (const auto& a : axes) out.axis_names.push_back(a.name);
  for (const auto& c : cfg.criteria) out.criteria.push_back(canonical_criterion(c));

  std::size_t total = 1;
  for (std::size_t k = 0; k < axes.size(); ++k) total *= static_cast<std::size_t>(cfg.resolution);
  out.rows.resize(total);

  const CriterionEvaluator eval(info.dims, info.three_qubit, cfg.eval);
  // Probe once on the maximally mixed member so an unsupported criterion
  // fails before the pool starts.
  const ComplexMatrix probe = family_state(cfg.family, std::vector<double>(axes.size(), 0.0), cfg.beta);
  for (const auto& c : out.criteria) (void)eval.evaluate(c, probe);

  const auto run_row = [&](std::size_t n) {
    ScanRow& row = out.rows[n];
    std::size_t rest = n;
    row.params.assign(axes.size(), 0.0);
    // Last axis varies fastest.
    for (std::size_t k = axes.size(); k-- > 0;) {
      row.params[k] = grid_value(axes[k], static_cast<int>(rest % cfg.resolution), cfg.resolution);
      rest /= cfg.resolution;
    }
    ComplexMatrix rho;
    try {
      rho = family_state(cfg.family, row.params, cfg.beta);
    } catch (const Error&) {
      row.physical = false;
      return;
    }
    row.physical = true;
    for (const auto& c : out.criteria) row.results.push_back(eval.evaluate(c, rho));
  };

  const unsigned threads = std::max(1U, cfg.threads);
  if (threads == 1) {
    for (std::size_t n = 0; n < total; ++n) run_row(n);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t n; (n = next.fetch_add(1)) < total;) {
          try {
            run_row(n);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }
  return out;
}

inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// Diagnostic column reported for each criterion.
inline std::string diagnostic_name(const std::string& criterion) {
  if (criterion == "ppt") return "ppt_min_eig";
  if (criterion == "map") return "map_min_eig";
  return "omega_" + criterion;
}

inline std::optional<double> diagnostic_value(const DetectionReport& r) {
  if (r.criterion == "ppt") return r.ppt_min_eig;
  if (r.criterion == "map") return r.map_min_eig;
  return r.omega;
}

/// Header, parameters, physical, det_<criterion> columns, then diagnostics.
inline void write_csv(std::ostream& os, const ScanResult& scan) {
  std::vector<std::string> header = scan.axis_names;
  header.emplace_back("physical");
  for (const auto& c : scan.criteria) header.push_back("det_" + c);
  for (const auto& c : scan.criteria) header.push_back(diagnostic_name(c));
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& row : scan.rows) {
    for (std::size_t k = 0; k < row.params.size(); ++k) os << (k ? "," : "") << format_real(row.params[k]);
    os << ',' << (row.physical ? 1 : 0);
    for (std::size_t c = 0; c < scan.criteria.size(); ++c) {
      os << ',';
      if (row.physical) os << (row.results[c].detected ? 1 : 0);
    }
    for (std::size_t c = 0; c < scan.criteria.size(); ++c) {
      os << ',';
      if (!row.physical) continue;
      if (const auto d = diagnostic_value(row.results[c])) os << format_real(*d);
    }
    os << '\n';
  }
}

// ---------------------------------------------------------------------------
// Thresholds along v

inline ThresholdResult family_threshold(const std::string& family, const std::string& criterion, double lo,
                                        double hi, double tol, const EvalOptions& opts = {}) {
  if (family != "werner" && family != "w_noise") {
    throw Error("threshold: family must be werner or w_noise, got '" + family + "'");
  }
  if (lo < 0.0 || hi > 1.0) throw Error("threshold: interval must lie within [0, 1]");
  const auto info = family_info(family);
  const CriterionEvaluator eval(info.dims, info.three_qubit, opts);
  const std::string c = canonical_criterion(criterion);
  return threshold_scan([&](double v) { return eval.evaluate(c, family_state(family, {v}, 0.0)).detected; }, lo,
                        hi, tol);
}

}  // namespace entid
