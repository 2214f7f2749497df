// entid: family scans, single-state analysis, threshold extraction and the
// property suite.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "entid/entid.hpp"
#include "json.hpp"

namespace {

using nlohmann::ordered_json;

struct CommonFlags {
  std::uint64_t seed = 20170801;
  int restarts = 20;
  double tol = 1e-10;
  std::string cut = "12|3";
  std::string out = "-";
  std::string format;
};

void add_optimizer_flags(CLI::App* cmd, CommonFlags& f, bool tol_is_optimizer, bool with_cut = true) {
  cmd->add_option("--seed", f.seed, "master seed for optimizer restarts")->capture_default_str();
  cmd->add_option("--restarts", f.restarts, "optimizer restarts")->capture_default_str()->check(CLI::PositiveNumber);
  if (tol_is_optimizer) {
    cmd->add_option("--tol", f.tol, "optimizer convergence tolerance")->capture_default_str();
  }
  if (with_cut) {
    cmd->add_option("--cut", f.cut, "bipartition for three-qubit states, e.g. 12|3")->capture_default_str();
  }
  cmd->add_option("--out", f.out, "output path, - for standard output")->capture_default_str();
}

entid::EvalOptions eval_options(const CommonFlags& f) {
  entid::EvalOptions e;
  e.optimizer.seed = f.seed;
  e.optimizer.restarts = f.restarts;
  e.optimizer.tol = f.tol;
  e.cut = entid::Bipartition::parse(f.cut);
  return e;
}

/// Plain reals, or pi, pi/k, k*pi.
double parse_bound(const std::string& s, const std::string& token) {
  try {
    if (s == "pi") return std::numbers::pi;
    if (s.rfind("pi/", 0) == 0) return std::numbers::pi / std::stod(s.substr(3));
    if (s.size() > 3 && s.compare(s.size() - 3, 3, "*pi") == 0) return std::stod(s.substr(0, s.size() - 3)) * std::numbers::pi;
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw entid::Error("cannot parse '" + s + "' in '" + token + "': expected a real, pi, pi/k or k*pi");
}

/// "name=lo:hi"
std::pair<std::string, std::pair<double, double>> parse_range(const std::string& token) {
  const auto eq = token.find('=');
  const auto colon = token.find(':', eq == std::string::npos ? 0 : eq);
  if (eq == std::string::npos || eq == 0 || colon == std::string::npos) {
    throw entid::Error("cannot parse range '" + token + "': expected name=lo:hi");
  }
  return {token.substr(0, eq),
          {parse_bound(token.substr(eq + 1, colon - eq - 1), token), parse_bound(token.substr(colon + 1), token)}};
}

ordered_json conventions(const entid::EvalOptions& e) {
  ordered_json c;
  c["basis"] = "generalized Gell-Mann: sqrt(2/d) I, symmetric pairs, antisymmetric pairs, diagonal; "
               "Tr(s_i s_j) = 2 delta_ij; d = 2 gives (I, X, Y, Z)";
  c["correlation_tensor"] = "rho = 1/4 sum_ij T_ij s_i (x) s_j";
  c["dual_map"] = "Lambda^d[l] = Tr_B[W (I (x) l)], W = omega~0 I - G[rho]";
  c["map_condition"] = "min eigenvalue of (1 (x) T o Lambda^d)[target]";
  c["sign_zero_tolerance"] = entid::kSignZeroTolerance;
  c["detection_tolerance"] = entid::kDetectionTolerance;
  c["negativity_tolerance"] = "min eigenvalue < -1e-9 max(1, max|M_ij|)";
  c["optimizer"] = {{"method", "alternating top eigenvector"},
                    {"restarts", e.optimizer.restarts},
                    {"tol", e.optimizer.tol},
                    {"max_iterations", e.optimizer.max_iterations},
                    {"seed", e.optimizer.seed}};
  return c;
}

ordered_json report_json(const entid::DetectionReport& r) {
  ordered_json j;
  j["criterion"] = r.criterion;
  j["detected"] = r.detected;
  const auto put = [&](const char* key, const std::optional<double>& v) {
    if (v) j[key] = *v;
  };
  put("omega", r.omega);
  put("omega_tilde0", r.omega_tilde0);
  put("self_overlap", r.self_overlap);
  put("map_min_eig", r.map_min_eig);
  put("ppt_min_eig", r.ppt_min_eig);
  put("lhs", r.lhs);
  put("rhs", r.rhs);
  if (!r.scope.empty()) j["scope"] = r.scope;
  j["wall_seconds"] = r.wall_seconds;
  return j;
}

void emit(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw entid::Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw entid::Error("failed writing '" + path + "'");
}

int cmd_scan(const CommonFlags& f, const std::string& family, const std::string& criteria, int resolution,
             const std::vector<std::string>& ranges, const std::string& beta_text, unsigned threads) {
  const double beta = parse_bound(beta_text, "--beta " + beta_text);
  entid::ScanConfig cfg;
  cfg.family = family;
  cfg.criteria = entid::parse_criteria(criteria);
  cfg.resolution = resolution;
  for (const auto& r : ranges) {
    auto [name, range] = parse_range(r);
    if (!cfg.ranges.emplace(name, range).second) throw entid::Error("range for '" + name + "' given twice");
  }
  cfg.beta = beta;
  cfg.eval = eval_options(f);
  cfg.threads = threads;
  const auto scan = entid::run_scan(cfg);

  if (f.format == "csv") {
    std::ostringstream os;
    entid::write_csv(os, scan);
    emit(f.out, os.str());
    return 0;
  }
  ordered_json j;
  j["family"] = scan.family;
  j["beta"] = beta;
  j["resolution"] = resolution;
  j["axes"] = scan.axis_names;
  j["criteria"] = scan.criteria;
  j["conventions"] = conventions(cfg.eval);
  j["rows"] = ordered_json::array();
  for (const auto& row : scan.rows) {
    ordered_json r;
    for (std::size_t k = 0; k < row.params.size(); ++k) r["params"][scan.axis_names[k]] = row.params[k];
    r["physical"] = row.physical;
    if (row.physical) {
      for (std::size_t c = 0; c < scan.criteria.size(); ++c) {
        r["verdicts"][scan.criteria[c]] = row.results[c].detected;
        if (const auto d = entid::diagnostic_value(row.results[c])) {
          r["diagnostics"][entid::diagnostic_name(scan.criteria[c])] = *d;
        }
      }
    }
    j["rows"].push_back(std::move(r));
  }
  emit(f.out, j.dump(1) + "\n");
  return 0;
}

int cmd_analyze(const CommonFlags& f, const std::string& descriptor, const std::string& criteria) {
  const auto spec = entid::parse_state_spec(descriptor);
  const auto eval = eval_options(f);
  // Sign and the PPT generator are not defined across a three-qubit cut.
  const std::string chosen = !criteria.empty() ? criteria : spec.three_qubit ? "metric,ppt,map" : "metric,sign,ppt,map";
  const auto report = entid::analyze_state(spec, entid::parse_criteria(chosen), eval);
  ordered_json j;
  j["state"] = spec.text;
  j["family"] = spec.family;
  if (!spec.label.empty()) j["label"] = spec.label;
  for (const auto& [k, v] : spec.params) j["params"][k] = v;
  j["dims"] = spec.three_qubit ? ordered_json{2, 2, 2} : ordered_json{spec.dims.a, spec.dims.b};
  j["conventions"] = conventions(eval);
  j["results"] = ordered_json::array();
  for (const auto& r : report.results) j["results"].push_back(report_json(r));
  j["wall_seconds"] = report.wall_seconds;
  emit(f.out, j.dump(2) + "\n");
  return 0;
}

int cmd_threshold(const CommonFlags& f, const std::string& family, const std::string& criterion,
                  const std::vector<std::string>& ranges, double bisection_tol) {
  double lo = 0.0;
  double hi = 1.0;
  for (const auto& r : ranges) {
    const auto [name, range] = parse_range(r);
    if (name != "v") throw entid::Error("threshold scans run along v, got range for '" + name + "'");
    lo = range.first;
    hi = range.second;
  }
  const auto eval = eval_options(f);
  const auto res = entid::family_threshold(family, criterion, lo, hi, bisection_tol, eval);
  ordered_json j;
  j["family"] = family;
  j["criterion"] = entid::canonical_criterion(criterion);
  j["interval"] = {lo, hi};
  j["threshold"] = res.threshold;
  j["tol"] = res.tol;
  j["detects_above"] = res.detects_above;
  j["evaluations"] = res.evaluations;
  if (family == "w_noise") {
    j["scope"] = "cut " + eval.cut.to_string();
    j["biseparability_bound"] = entid::kWNoiseBiseparabilityBound;
  }
  j["conventions"] = conventions(eval);
  emit(f.out, j.dump(2) + "\n");
  return 0;
}

int cmd_verify(const CommonFlags& f, int count, int states, bool corrupt) {
  entid::VerifyOptions opts;
  opts.seed = f.seed;
  opts.pairs = count;
  opts.states = states;
  opts.optimizer.restarts = f.restarts;
  opts.optimizer.tol = f.tol;
  opts.corrupt_basis = corrupt;
  const auto results = entid::VerifySuite(opts).run_all();
  bool ok = true;
  std::ostringstream os;
  if (corrupt) os << "negative control: corrupted basis\n";
  for (const auto& r : results) {
    ok = ok && r.passed;
    char line[256];
    std::snprintf(line, sizeof line, "%-4s %-30s cases=%-4d max_error=%.3e tol=%.1e  %.2fs  ", r.passed ? "ok" : "FAIL",
                  r.name.c_str(), r.cases, r.max_error, r.tolerance, r.wall_seconds);
    os << line << r.detail << '\n';
  }
  os << (ok ? "all checks passed\n" : "some checks FAILED\n");
  emit(f.out, os.str());
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlinear entanglement identifiers and the positive maps they induce"};
  app.require_subcommand(1);

  CommonFlags scan_f;
  std::string scan_family;
  std::string scan_criteria = "metric,sign,ppt";
  int resolution = 41;
  std::vector<std::string> scan_ranges;
  std::string beta = "pi/4";
  unsigned threads = 1;
  auto* scan = app.add_subcommand("scan", "grid scan over a state family");
  scan->add_option("--family", scan_family, "bell_diagonal, weyl, werner, qutrit_werner, w_noise")->required();
  scan->add_option("--criteria", scan_criteria, "comma list of metric, sign, ppt, map, pptgen, cubic")
      ->capture_default_str();
  scan->add_option("--resolution", resolution, "grid points per axis")->capture_default_str();
  scan->add_option("--range", scan_ranges, "axis range name=lo:hi (repeatable)");
  scan->add_option("--beta", beta, "beta for qutrit_werner")->capture_default_str();
  scan->add_option("--threads", threads, "worker threads")->capture_default_str();
  add_optimizer_flags(scan, scan_f, true);
  scan_f.format = "csv";
  scan->add_option("--format", scan_f.format, "csv or json")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "json"}));

  CommonFlags an_f;
  std::string descriptor;
  std::string an_criteria;
  auto* analyze = app.add_subcommand("analyze", "all criteria on one state");
  analyze->add_option("state", descriptor, "state descriptor, e.g. \"werner v=0.5\"")->required();
  analyze->add_option("--criteria", an_criteria,
                      "comma list of criteria (default metric,sign,ppt,map; metric,ppt,map for three qubits)");
  add_optimizer_flags(analyze, an_f, true);
  an_f.format = "json";
  analyze->add_option("--format", an_f.format, "json")->capture_default_str()->check(CLI::IsMember({"json"}));

  CommonFlags th_f;
  std::string th_family;
  std::string th_criterion;
  std::vector<std::string> th_ranges;
  double bisection_tol = 1e-6;
  auto* threshold = app.add_subcommand("threshold", "bisect the detection threshold along v");
  threshold->add_option("--family", th_family, "werner or w_noise")->required();
  threshold->add_option("--criteria,--criterion", th_criterion, "single criterion")->required();
  threshold->add_option("--range", th_ranges, "interval v=lo:hi (default 0:1)");
  threshold->add_option("--tol", bisection_tol, "bisection tolerance")->capture_default_str();
  add_optimizer_flags(threshold, th_f, false);
  th_f.format = "json";
  threshold->add_option("--format", th_f.format, "json")->capture_default_str()->check(CLI::IsMember({"json"}));

  CommonFlags ver_f;
  int count = 50;
  int states = 200;
  bool corrupt = false;
  auto* verify = app.add_subcommand("verify", "run the property suite");
  verify->add_option("--count", count, "Hermitian pairs per duality check")->capture_default_str();
  verify->add_option("--states", states, "states per soundness check")->capture_default_str();
  verify->add_flag("--corrupt-basis", corrupt, "negative control: corrupt one basis element");
  add_optimizer_flags(verify, ver_f, true, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*scan) return cmd_scan(scan_f, scan_family, scan_criteria, resolution, scan_ranges, beta, threads);
    if (*analyze) return cmd_analyze(an_f, descriptor, an_criteria);
    if (*threshold) return cmd_threshold(th_f, th_family, th_criterion, th_ranges, bisection_tol);
    if (*verify) return cmd_verify(ver_f, count, states, corrupt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
