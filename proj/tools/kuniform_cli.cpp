// Copyright 2026 The kuniform Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "kuniform/codes.hpp"
#include "kuniform/ensembles.hpp"
#include "kuniform/enumerators.hpp"
#include "kuniform/fixtures.hpp"
#include "kuniform/io.hpp"
#include "kuniform/optimizer.hpp"
#include "kuniform/state.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace kuniform;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitConstraint = 3;
constexpr std::uint64_t kDefaultSeed = 1;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("KUNIFORM_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InputError(std::string("KUNIFORM_SEED is not an unsigned integer: ") + env);
    }
  }
  return kDefaultSeed;
}

std::string sig6(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

/// Full-precision number for CSV output.
std::string full(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json number(double x) {
  if (std::isfinite(x)) return x;
  return sig6(x);
}

std::string scalar_text(const json& v) {
  if (v.is_number_float()) return sig6(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void print_text(std::ostream& out, const json& v, const std::string& indent) {
  for (const auto& [key, value] : v.items()) {
    if (value.is_object()) {
      out << indent << key << ":\n";
      print_text(out, value, indent + "  ");
    } else if (value.is_array() && !value.empty() && value.front().is_object()) {
      out << indent << key << ":\n";
      for (const auto& item : value) {
        out << indent << "  -\n";
        print_text(out, item, indent + "    ");
      }
    } else if (value.is_array()) {
      out << indent << key << ": [";
      for (std::size_t i = 0; i < value.size(); ++i) {
        out << (i ? ", " : "") << scalar_text(value[i]);
      }
      out << "]\n";
    } else {
      out << indent << key << ": " << scalar_text(value) << '\n';
    }
  }
}

json subset_json(const SubsetMask& s) {
  json out = json::array();
  for (int p : s.indices()) out.push_back(p);
  return out;
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  return out;
}

/// Shared state of one invocation: output format, seed and the manifest.
struct Run {
  std::string command;
  std::string format = "text";
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  json parameters = json::object();
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  RngSpec rng() const { return {seed, stream}; }

  json manifest() const {
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {{"command", command},
            {"parameters", parameters},
            {"rng",
             {{"seed", seed},
              {"stream_id", stream},
              {"algorithm_version", RngSpec::kStreamAlgorithmVersion}}},
            {"version", KUNIFORM_VERSION},
            {"wall_seconds", seconds}};
  }

  void emit(json report) const {
    report["manifest"] = manifest();
    if (format == "json") {
      std::cout << report.dump(2) << '\n';
    } else {
      print_text(std::cout, report, "");
    }
  }
};

void add_common(CLI::App* app, Run& run, bool seeded) {
  app->add_option("--format", run.format, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  if (seeded) {
    app->add_option("--seed", run.seed, "RNG seed (default: $KUNIFORM_SEED or 1)");
    app->add_option("--stream", run.stream, "RNG stream id")->capture_default_str();
  }
}

json config_json(const OptimizerConfig& c) {
  return {{"restarts", c.restarts},
          {"max_iters", c.max_iters},
          {"step_size", c.step_size},
          {"lse_temperature_schedule", c.lse_temperature_schedule},
          {"grad_tol", c.grad_tol},
          {"purity_tol", c.purity_tol}};
}

void add_config_options(CLI::App* app, OptimizerConfig& config) {
  app->add_option("--restarts", config.restarts, "Independent restarts")->capture_default_str();
  app->add_option("--iters", config.max_iters, "Iteration budget per restart")
      ->capture_default_str();
  app->add_option("--step", config.step_size, "Initial step size")->capture_default_str();
  app->add_option("--grad-tol", config.grad_tol, "Projected-gradient stopping norm")
      ->capture_default_str();
}

json purities_json(const std::vector<SubsetPurity>& purities, const QuditLayout& layout) {
  json out = json::array();
  for (const auto& sp : purities) {
    const double inv = 1.0 / static_cast<double>(layout.dim_of(sp.subset.size()));
    out.push_back({{"subset", subset_json(sp.subset)},
                   {"purity", sp.purity},
                   {"deviation", sp.purity - inv}});
  }
  return out;
}

// ---------------------------------------------------------------- certify

struct CertifyArgs {
  std::string state_file;
  int k = 1;
  std::string csv;
};

void cmd_certify(Run& run, const CertifyArgs& a) {
  const PureState state = read_state_file(a.state_file);
  run.parameters = {{"state", a.state_file}, {"k", a.k}};
  const UniformityReport rep = uniformity_epsilon(state, a.k);
  json argmax = json::array();
  for (const auto& s : rep.argmax_subsets) argmax.push_back(subset_json(s));
  run.emit({{"n", state.layout().n()},
            {"d", state.layout().d()},
            {"k", rep.k},
            {"epsilon", rep.epsilon},
            {"argmax_subsets", argmax},
            {"subset_purities", purities_json(rep.subset_purities, state.layout())}});
  if (!a.csv.empty()) {
    auto out = open_csv(a.csv);
    out << "subset,purity,deviation\n";
    const double inv = 1.0 / static_cast<double>(state.layout().dim_of(a.k));
    for (const auto& sp : rep.subset_purities) {
      out << '"' << sp.subset.to_string() << "\"," << full(sp.purity) << ','
          << full(sp.purity - inv) << '\n';
    }
  }
}

// ---------------------------------------------------------------- optimize

struct OptimizeArgs {
  int n = 4;
  int d = 2;
  int k = 2;
  OptimizerConfig config;
  std::string out;
};

void cmd_optimize(Run& run, const OptimizeArgs& a) {
  const QuditLayout layout(a.n, a.d);
  run.parameters = {{"n", a.n}, {"d", a.d}, {"k", a.k}, {"config", config_json(a.config)}};
  const OptimizationResult r = minimize_epsilon(layout, a.k, a.config, run.rng());
  json report = {{"n", a.n},
                 {"d", a.d},
                 {"k", a.k},
                 {"epsilon_star", r.epsilon_star},
                 {"iterations_used", r.iterations_used},
                 {"converged", r.converged},
                 {"restart_index", r.restart_index},
                 {"best_history", r.best_history},
                 {"subset_purities", purities_json(r.subset_purities, layout)}};
  if (const auto ref = find_reference(a.n, a.d, a.k)) report["reference"] = ref->epsilon;
  if (!a.out.empty()) {
    write_state_file(a.out, r.best_state);
    report["state_file"] = a.out;
  }
  run.emit(report);
}

// ---------------------------------------------------------------- table

struct TableArgs {
  std::vector<std::string> rows;
  OptimizerConfig config;
  std::string csv;
};

void cmd_table(Run& run, const TableArgs& a) {
  std::vector<TableReference> rows;
  if (a.rows.empty()) {
    rows = reference_table();
  } else {
    for (const auto& text : a.rows) {
      int n = 0, d = 0, k = 0;
      char c1 = 0, c2 = 0;
      std::istringstream is(text);
      if (!(is >> n >> c1 >> d >> c2 >> k) || c1 != ',' || c2 != ',') {
        throw InputError("row '" + text + "' is not of the form n,d,k");
      }
      const auto ref = find_reference(n, d, k);
      if (!ref) throw InputError("no reference value for row " + text);
      rows.push_back(*ref);
    }
  }
  run.parameters = {{"rows", a.rows}, {"config", config_json(a.config)}};
  std::ostringstream csv;
  csv << "n,d,k,epsilon_star,reference,pass\n";
  json results = json::array();
  bool all_pass = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& ref = rows[i];
    const TableRowResult r = certify_table_row(ref.n, ref.d, ref.k, a.config, run.rng().child(i));
    all_pass = all_pass && r.within_tolerance;
    csv << ref.n << ',' << ref.d << ',' << ref.k << ',' << full(r.result.epsilon_star) << ','
        << full(ref.epsilon) << ',' << (r.within_tolerance ? 1 : 0) << '\n';
    results.push_back({{"n", ref.n},
                       {"d", ref.d},
                       {"k", ref.k},
                       {"epsilon_star", r.result.epsilon_star},
                       {"reference", ref.epsilon},
                       {"pass", r.within_tolerance}});
  }
  if (a.csv.empty()) {
    std::cout << csv.str();
  } else {
    open_csv(a.csv) << csv.str();
    run.emit({{"rows", results}, {"all_pass", all_pass}, {"csv", a.csv}});
  }
}

// ---------------------------------------------------------------- bound

struct BoundArgs {
  int n = 4;
  int d = 2;
  int k = 2;
  int t = 8;
  int code_k = 2;
  int delta = 2;
  double eps = 0.0;
  double eps_prime = 0.0;
  double eps_prime_design = 0.0;
  double eps_prime_net = 0.01;
  std::string state_file;
  int k_sweep = 0;
  std::string csv;
};

json bound_json(const BoundValue& b) { return {{"value", number(b.value)}, {"vacuous", b.vacuous}}; }

void cmd_bound_nonexistence(Run& run, const BoundArgs& a) {
  if (a.t < 0 || a.t > a.n) throw InputError("need 0 <= t <= n");
  std::vector<int> parties;
  for (int p = 1; p <= a.t; ++p) parties.push_back(p);
  const SubsetMask t_set = SubsetMask::from_indices(parties);
  run.parameters = {{"d", a.d}, {"n", a.n}, {"t", a.t}};
  double shadow = 0.0;
  json report;
  if (a.state_file.empty()) {
    shadow = hypothetical_ame_shadow(a.d, a.n, t_set);
    report["profile"] = "hypothetical AME";
  } else {
    const PureState state = read_state_file(a.state_file);
    if (state.layout() != QuditLayout(a.n, a.d)) throw InputError("state layout does not match --n/--d");
    shadow = shadow_enumerator(state, t_set);
    report["profile"] = a.state_file;
    run.parameters["state"] = a.state_file;
  }
  report["T"] = subset_json(t_set);
  report["shadow"] = shadow;
  report["f"] = f_coefficient(a.d, a.n, a.t);
  report["value"] = nonexistence_epsilon_bound(a.d, a.n, a.t, shadow);
  run.emit(report);
}

void cmd_bound_haar(Run& run, const BoundArgs& a) {
  run.parameters = {{"n", a.n}, {"d", a.d}, {"k", a.k}, {"eps", a.eps}};
  json report = bound_json(haar_success_lower_bound(a.n, a.d, a.k, a.eps));
  report["Delta"] = haar_purity_gap(a.n, a.d, a.k);
  run.emit(report);
}

void cmd_bound_design(Run& run, const BoundArgs& a) {
  run.parameters = {{"n", a.n}, {"d", a.d}, {"k", a.k}, {"eps", a.eps}, {"t", a.t},
                    {"eps_prime", a.eps_prime}};
  json report = bound_json(design_deviation_bound(a.n, a.d, a.k, a.eps, a.t, a.eps_prime));
  report["Delta"] = haar_purity_gap(a.n, a.d, a.k);
  report["m"] = a.t / 8;
  run.emit(report);
}

void cmd_bound_subspace(Run& run, const BoundArgs& a) {
  run.parameters = {{"n", a.n}, {"d", a.d}, {"K", a.code_k}, {"delta", a.delta},
                    {"eps", a.eps}, {"eps_prime", a.eps_prime}};
  json report = bound_json(
      random_subspace_success_bound(a.n, a.d, a.code_k, a.delta, a.eps, a.eps_prime));
  report["net_cardinality"] = number(net_cardinality(a.eps_prime, a.code_k));
  run.emit(report);
}

void cmd_bound_circuit_code(Run& run, const BoundArgs& a) {
  run.parameters = {{"n", a.n}, {"d", a.d}, {"K", a.code_k}, {"delta", a.delta},
                    {"eps", a.eps}, {"t", a.t}, {"eps_prime_design", a.eps_prime_design},
                    {"eps_prime_net", a.eps_prime_net}, {"k_sweep", a.k_sweep}};
  json report = bound_json(circuit_code_failure_bound(a.n, a.d, a.code_k, a.delta, a.eps, a.t,
                                                      a.eps_prime_design, a.eps_prime_net));
  report["net_cardinality"] = number(net_cardinality(a.eps_prime_net, a.code_k));
  if (a.k_sweep > 0) {
    std::ostringstream csv;
    csv << "K,net_cardinality,bound,vacuous\n";
    for (int kk = 1; kk <= a.k_sweep; ++kk) {
      const BoundValue b = circuit_code_failure_bound(a.n, a.d, kk, a.delta, a.eps, a.t,
                                                      a.eps_prime_design, a.eps_prime_net);
      csv << kk << ',' << full(net_cardinality(a.eps_prime_net, kk)) << ',' << full(b.value)
          << ',' << (b.vacuous ? 1 : 0) << '\n';
    }
    if (a.csv.empty()) {
      std::cout << csv.str();
      return;
    }
    open_csv(a.csv) << csv.str();
    report["csv"] = a.csv;
  }
  run.emit(report);
}

// ---------------------------------------------------------------- sample

struct SampleArgs {
  std::string ensemble = "haar";
  int depth = 0;
  int n = 4;
  int d = 2;
  int k = 1;
  double eps = 0.1;
  long trials = 1000;
  bool mean_purity = false;
  std::vector<int> sweep;
  std::string csv;
};

Ensemble make_ensemble(const std::string& name, int depth) {
  if (name == "haar") return Ensemble::haar();
  return Ensemble::brickwork(depth);
}

std::pair<double, int> reference_bound(const SampleArgs& a) {
  try {
    const BoundValue b = haar_success_lower_bound(a.n, a.d, a.k, a.eps);
    return {b.value, b.vacuous ? 1 : 0};
  } catch (const ConstraintViolation&) {
    return {std::numeric_limits<double>::quiet_NaN(), 1};
  }
}

void cmd_sample(Run& run, const SampleArgs& a) {
  const QuditLayout layout(a.n, a.d);
  run.parameters = {{"ensemble", a.ensemble}, {"depth", a.depth}, {"n", a.n}, {"d", a.d},
                    {"k", a.k}, {"eps", a.eps}, {"trials", a.trials}};
  if (!a.sweep.empty()) {
    if (a.ensemble != "brickwork") throw InputError("--sweep-depths needs --ensemble brickwork");
    run.parameters["sweep_depths"] = a.sweep;
    const auto [bound, vacuous] = reference_bound(a);
    std::ostringstream csv;
    csv << "depth,estimate,stderr,bound,vacuous\n";
    for (int depth : a.sweep) {
      const auto s = mc_uniformity_probability(Ensemble::brickwork(depth), layout, a.k, a.eps,
                                               a.trials, run.rng());
      csv << depth << ',' << full(s.estimate) << ',' << full(s.stderr_) << ',' << full(bound)
          << ',' << vacuous << '\n';
    }
    if (a.csv.empty()) {
      std::cout << csv.str();
      return;
    }
    open_csv(a.csv) << csv.str();
    run.emit({{"csv", a.csv}});
    return;
  }
  const Ensemble ensemble = make_ensemble(a.ensemble, a.depth);
  const MonteCarloSummary s =
      mc_uniformity_probability(ensemble, layout, a.k, a.eps, a.trials, run.rng());
  json report = {{"ensemble", ensemble.name()},
                 {"trials", s.trials},
                 {"successes", s.successes},
                 {"estimate", s.estimate},
                 {"stderr", s.stderr_}};
  const auto [bound, vacuous] = reference_bound(a);
  report["haar_bound"] = {{"value", number(bound)}, {"vacuous", vacuous != 0}};
  if (a.mean_purity) {
    const SampleMean m = mc_mean_purity(ensemble, layout, a.k, a.trials, run.rng());
    report["mean_purity"] = {{"mean", m.mean},
                             {"stderr", m.stderr_},
                             {"haar_mean", haar_average_purity(a.n, a.d, a.k)}};
  }
  run.emit(report);
}

// ---------------------------------------------------------------- enumerate

struct EnumerateArgs {
  std::string state_file;
  std::string code_file;
  bool shor_laflamme = false;
  std::string shadow_csv;
};

void cmd_enumerate(Run& run, const EnumerateArgs& a) {
  if (a.state_file.empty() == a.code_file.empty()) {
    throw InputError("give exactly one of --state or --code");
  }
  run.parameters = {{"state", a.state_file}, {"code", a.code_file},
                    {"shor_laflamme", a.shor_laflamme}};
  Matrix m;
  std::optional<QuditLayout> layout;
  std::optional<PureState> state;
  json report;
  if (!a.state_file.empty()) {
    state = read_state_file(a.state_file);
    layout = state->layout();
    m = state->amplitudes() * state->amplitudes().adjoint();
  } else {
    const CodeSpace code = read_code_file(a.code_file);
    layout = code.layout();
    m = code.projector() / static_cast<double>(code.k_dim());
    report["K"] = code.k_dim();
    report["operator"] = "P/K";
  }
  if (a.shor_laflamme && !shor_laflamme_feasible(*layout)) {
    throw InputError("d^(2n) labels exceed the 2^24 cap for the Shor-Laflamme route; "
                     "drop --shor-laflamme to use the Rains route");
  }
  const EnumeratorReport rep = enumerator_report(m, m, *layout, a.shor_laflamme);
  report["n"] = layout->n();
  report["d"] = layout->d();
  if (rep.has_shor_laflamme) {
    report["A"] = rep.A;
    report["B"] = rep.B;
  }
  report["Aprime"] = rep.Aprime;
  report["Bprime"] = rep.Bprime;
  if (!a.shadow_csv.empty()) {
    std::ostringstream csv;
    csv << "T,s_T\n";
    double min_shadow = std::numeric_limits<double>::infinity();
    for (const SubsetMask& t : all_subsets(layout->n())) {
      const double s = state ? shadow_enumerator(*state, t)
                             : shadow_enumerator(DensityMatrix(m), *layout, t);
      min_shadow = std::min(min_shadow, s);
      csv << t.bits() << ',' << full(s) << '\n';
    }
    report["min_shadow"] = min_shadow;
    if (a.shadow_csv == "-") {
      std::cout << csv.str();
      return;
    }
    open_csv(a.shadow_csv) << csv.str();
    report["shadow_csv"] = a.shadow_csv;
  }
  run.emit(report);
}

// ---------------------------------------------------------------- phase-diagram

struct PhaseArgs {
  int d = 2;
  int resolution = 20;
  std::vector<double> point;
  std::string csv;
};

void cmd_phase_diagram(Run& run, const PhaseArgs& a) {
  if (a.d < 2) throw InputError("d must be >= 2");
  run.parameters = {{"d", a.d}, {"resolution", a.resolution}};
  if (!a.point.empty()) {
    const PhaseRegion r = phase_region(a.point[0], a.point[1]);
    run.parameters["point"] = a.point;
    run.emit({{"alpha", a.point[0]},
              {"lambda", a.point[1]},
              {"region", r.label_name()},
              {"vanishing_failure", r.vanishing_failure},
              {"vanishing_proximity", r.vanishing_proximity},
              {"linear_uniformity", r.linear_uniformity},
              {"constructible", r.constructible},
              {"locally_indistinguishable", r.locally_indistinguishable}});
    return;
  }
  if (a.resolution < 2) throw InputError("resolution must be >= 2");
  std::ostringstream csv;
  csv << "alpha,lambda,region\n";
  for (int i = 0; i < a.resolution; ++i) {
    const double alpha = 0.5 * (i + 1) / (a.resolution + 1);
    for (int j = 0; j < a.resolution; ++j) {
      const double lambda = -0.5 + 0.5 * j / (a.resolution - 1);
      csv << full(alpha) << ',' << full(lambda) << ',' << phase_region(alpha, lambda).label_name()
          << '\n';
    }
  }
  if (a.csv.empty()) {
    std::cout << csv.str();
    return;
  }
  open_csv(a.csv) << csv.str();
  run.emit({{"csv", a.csv}});
}

// ---------------------------------------------------------------- code

struct CodeArgs {
  int n = 4;
  int d = 2;
  int code_k = 2;
  int delta = 2;
  int k = 1;
  int pairs = 200;
  double epsilon = -1.0;
  std::string method = "optimized";
  std::string code_file;
  std::string out;
  std::string csv;
  OptimizerConfig config = [] {
    OptimizerConfig c;
    c.restarts = 8;
    c.max_iters = 2000;
    return c;
  }();
};

void cmd_code_random(Run& run, const CodeArgs& a) {
  if (a.out.empty()) throw InputError("--out is required");
  run.parameters = {{"n", a.n}, {"d", a.d}, {"K", a.code_k}};
  const CodeSpace code = random_code(QuditLayout(a.n, a.d), a.code_k, run.rng());
  write_code_file(a.out, code);
  run.emit({{"code_file", a.out}, {"n", a.n}, {"d", a.d}, {"K", a.code_k}});
}

CodeCertificate certify_code(const CodeSpace& code, const CodeArgs& a, const RngSpec& rng) {
  const auto method = a.method == "sampled" ? CertificationMethod::kSampled
                                            : CertificationMethod::kOptimized;
  return code_epsilon(code, a.delta, a.config, rng, method);
}

void cmd_code_certify(Run& run, const CodeArgs& a) {
  const CodeSpace code = read_code_file(a.code_file);
  run.parameters = {{"code", a.code_file}, {"delta", a.delta}, {"method", a.method},
                    {"config", config_json(a.config)}};
  const CodeCertificate cert = certify_code(code, a, run.rng());
  json logical = json::array();
  for (Eigen::Index i = 0; i < cert.worst_logical.size(); ++i) {
    logical.push_back({cert.worst_logical(i).real(), cert.worst_logical(i).imag()});
  }
  run.emit({{"delta", cert.delta},
            {"epsilon_lower", cert.epsilon_lower},
            {"method", method_name(cert.method)},
            {"samples_or_restarts", cert.samples_or_restarts},
            {"worst_subset", subset_json(cert.worst_subset)},
            {"worst_logical", logical},
            {"stationarity_residual", cert.stationarity_residual}});
}

void cmd_code_gap(Run& run, const CodeArgs& a) {
  const CodeSpace code = read_code_file(a.code_file);
  run.parameters = {{"code", a.code_file}, {"delta", a.delta}};
  const int n = code.layout().n();
  std::ostringstream csv;
  csv << "subset,size,gap\n";
  json sizes = json::array();
  for (int i = 0; i < a.delta && i <= n; ++i) {
    double total = 0.0;
    double worst = -std::numeric_limits<double>::infinity();
    for (const SubsetMask& s : subsets_of_size(n, i)) {
      const double g = code_enumerator_gap(code, s);
      total += g;
      worst = std::max(worst, g);
      csv << '"' << s.to_string() << "\"," << i << ',' << full(g) << '\n';
    }
    sizes.push_back({{"size", i}, {"sum", total}, {"max", worst}});
  }
  json report = {{"K", code.k_dim()}, {"gaps", sizes}};
  if (!a.csv.empty()) {
    open_csv(a.csv) << csv.str();
    report["csv"] = a.csv;
  }
  run.emit(report);
}

void cmd_code_mask(Run& run, const CodeArgs& a) {
  const CodeSpace code = read_code_file(a.code_file);
  run.parameters = {{"code", a.code_file}, {"k", a.k}, {"pairs", a.pairs}};
  run.emit({{"k", a.k},
            {"pairs", a.pairs},
            {"masking_proximity", masking_proximity(code, a.k, a.pairs, run.rng())}});
}

void cmd_code_bounds(Run& run, const CodeArgs& a) {
  const CodeSpace code = read_code_file(a.code_file);
  run.parameters = {{"code", a.code_file}, {"delta", a.delta}, {"epsilon", a.epsilon},
                    {"config", config_json(a.config)}};
  json report;
  double eps = a.epsilon;
  if (eps < 0.0) {
    eps = certify_code(code, a, run.rng()).epsilon_lower;
    report["epsilon_source"] = "certified lower bound";
  } else {
    report["epsilon_source"] = "given";
  }
  report["epsilon"] = eps;
  report["gap_bound"] = gap_bound_check(code, a.delta, eps);
  report["enumerator_bounds"] = enumerator_bounds_check(code, a.delta, eps);
  const PureDistanceCertificate pc =
      pure_distance_certificate(code.projector(), code.k_dim(), a.delta, code.layout());
  report["pure_distance"] = {{"gap", pc.gap},
                             {"aprime", pc.aprime},
                             {"bprime", pc.bprime},
                             {"pure_target", pc.pure_target},
                             {"is_pure", pc.is_pure}};
  run.emit(report);
}

// ---------------------------------------------------------------- fixture

struct FixtureArgs {
  std::string name;
  int n = 3;
  int d = 2;
  std::string out;
};

void cmd_fixture(Run& run, const FixtureArgs& a) {
  run.parameters = {{"name", a.name}, {"n", a.n}, {"d", a.d}};
  json report = {{"name", a.name}, {"file", a.out}};
  if (a.name == "five-qubit") {
    const CodeSpace code = five_qubit_code();
    double syndrome = 0.0;
    for (const auto& g : five_qubit_generators()) {
      syndrome = std::max(syndrome, (pauli_string(g) * code.isometry() - code.isometry())
                                        .cwiseAbs().maxCoeff());
    }
    if (syndrome > 1e-10) throw ConstraintViolation("stabilizer syndrome check failed");
    report["syndrome_residual"] = syndrome;
    write_code_file(a.out, code);
  } else {
    PureState state = a.name == "ghz" ? ghz_state(a.n, a.d)
                      : a.name == "bell" ? bell_state()
                                         : zero_state(a.n, a.d);
    write_state_file(a.out, state);
  }
  run.emit(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate k-uniform states: certification, search, bounds and codes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(KUNIFORM_VERSION));

  Run run;
  std::function<void()> action;
  auto bind = [&](CLI::App* sub, std::string name, auto fn) {
    sub->callback([&run, &action, name = std::move(name), fn] {
      run.command = name;
      action = fn;
    });
  };

  CertifyArgs certify;
  auto* c_certify = app.add_subcommand("certify", "Epsilon of a state file at uniformity level k");
  c_certify->add_option("--state", certify.state_file, "State file (JSON)")->required();
  c_certify->add_option("--k", certify.k, "Subset size")->required();
  c_certify->add_option("--csv", certify.csv, "Per-subset CSV: subset,purity,deviation");
  add_common(c_certify, run, false);
  bind(c_certify, "certify", [&] { cmd_certify(run, certify); });

  OptimizeArgs optimize;
  auto* c_opt = app.add_subcommand("optimize", "Search for a state with small epsilon");
  c_opt->add_option("--n", optimize.n, "Number of parties")->required();
  c_opt->add_option("--d", optimize.d, "Local dimension")->required();
  c_opt->add_option("--k", optimize.k, "Subset size")->required();
  add_config_options(c_opt, optimize.config);
  c_opt->add_option("--out", optimize.out, "Write the best state to this file");
  add_common(c_opt, run, true);
  bind(c_opt, "optimize", [&] { cmd_optimize(run, optimize); });

  TableArgs table;
  auto* c_table = app.add_subcommand(
      "table", "Reproduce reference rows. CSV columns: n,d,k,epsilon_star,reference,pass");
  c_table->add_option("--rows", table.rows, "Rows as n,d,k (default: every reference row)");
  add_config_options(c_table, table.config);
  c_table->add_option("--csv", table.csv, "Write the CSV here instead of stdout");
  add_common(c_table, run, true);
  bind(c_table, "table", [&] { cmd_table(run, table); });

  BoundArgs bound;
  auto* c_bound = app.add_subcommand("bound", "Evaluate a bound formula");
  c_bound->require_subcommand(1);
  add_common(c_bound, run, false);
  auto* b_non = c_bound->add_subcommand("nonexistence", "Shadow-inequality epsilon bound, T = {1..t}");
  b_non->add_option("--d", bound.d)->required();
  b_non->add_option("--n", bound.n)->required();
  b_non->add_option("--t", bound.t)->required();
  b_non->add_option("--state", bound.state_file, "Use this state's shadow instead of the AME profile");
  add_common(b_non, run, false);
  bind(b_non, "bound nonexistence", [&] { cmd_bound_nonexistence(run, bound); });
  auto* b_haar = c_bound->add_subcommand("haar", "Haar success-probability lower bound");
  b_haar->add_option("--n", bound.n)->required();
  b_haar->add_option("--d", bound.d)->required();
  b_haar->add_option("--k", bound.k)->required();
  b_haar->add_option("--eps", bound.eps)->required();
  add_common(b_haar, run, false);
  bind(b_haar, "bound haar", [&] { cmd_bound_haar(run, bound); });
  auto* b_design = c_bound->add_subcommand("design", "Approximate t-design failure bound");
  b_design->add_option("--n", bound.n)->required();
  b_design->add_option("--d", bound.d)->required();
  b_design->add_option("--k", bound.k)->required();
  b_design->add_option("--eps", bound.eps)->required();
  b_design->add_option("--t", bound.t)->required();
  b_design->add_option("--eps-prime", bound.eps_prime)->capture_default_str();
  add_common(b_design, run, false);
  bind(b_design, "bound design", [&] { cmd_bound_design(run, bound); });
  auto* b_sub = c_bound->add_subcommand("subspace", "Random-subspace code success bound");
  b_sub->add_option("--n", bound.n)->required();
  b_sub->add_option("--d", bound.d)->required();
  b_sub->add_option("--K", bound.code_k)->required();
  b_sub->add_option("--delta", bound.delta)->required();
  b_sub->add_option("--eps", bound.eps)->required();
  b_sub->add_option("--eps-prime", bound.eps_prime)->required();
  add_common(b_sub, run, false);
  bind(b_sub, "bound subspace", [&] { cmd_bound_subspace(run, bound); });
  auto* b_cc = c_bound->add_subcommand(
      "circuit-code",
      "Random-circuit code failure bound. --k-sweep CSV columns: K,net_cardinality,bound,vacuous");
  b_cc->add_option("--n", bound.n)->required();
  b_cc->add_option("--d", bound.d)->required();
  b_cc->add_option("--K", bound.code_k)->capture_default_str();
  b_cc->add_option("--delta", bound.delta)->required();
  b_cc->add_option("--eps", bound.eps)->required();
  b_cc->add_option("--t", bound.t)->required();
  b_cc->add_option("--eps-prime-design", bound.eps_prime_design)->capture_default_str();
  b_cc->add_option("--eps-prime-net", bound.eps_prime_net)->capture_default_str();
  b_cc->add_option("--k-sweep", bound.k_sweep, "Sweep K = 1..N");
  b_cc->add_option("--csv", bound.csv, "Sweep CSV path (default: stdout)");
  add_common(b_cc, run, false);
  bind(b_cc, "bound circuit-code", [&] { cmd_bound_circuit_code(run, bound); });

  SampleArgs sample;
  auto* c_sample = app.add_subcommand(
      "sample",
      "Monte-Carlo success rate. --sweep-depths CSV columns: depth,estimate,stderr,bound,vacuous");
  c_sample->add_option("--ensemble", sample.ensemble)
      ->check(CLI::IsMember({"haar", "brickwork"}))
      ->capture_default_str();
  c_sample->add_option("--depth", sample.depth, "Brickwork depth L")->capture_default_str();
  c_sample->add_option("--n", sample.n)->required();
  c_sample->add_option("--d", sample.d)->capture_default_str();
  c_sample->add_option("--k", sample.k)->required();
  c_sample->add_option("--eps", sample.eps)->required();
  c_sample->add_option("--trials", sample.trials)->capture_default_str();
  c_sample->add_flag("--mean-purity", sample.mean_purity, "Also report the mean k-subset purity");
  c_sample->add_option("--sweep-depths", sample.sweep, "Brickwork depths to sweep")->delimiter(',');
  c_sample->add_option("--csv", sample.csv, "Sweep CSV path (default: stdout)");
  add_common(c_sample, run, true);
  bind(c_sample, "sample", [&] { cmd_sample(run, sample); });

  EnumerateArgs enumerate;
  auto* c_enum = app.add_subcommand(
      "enumerate", "Weight enumerators. --shadow-csv columns: T (bitmask, bit i-1 = party i),s_T");
  c_enum->add_option("--state", enumerate.state_file, "State file");
  c_enum->add_option("--code", enumerate.code_file, "Code file (uses P/K)");
  c_enum->add_flag("--shor-laflamme", enumerate.shor_laflamme, "Also compute A and B by brute force");
  c_enum->add_option("--shadow-csv", enumerate.shadow_csv, "Write s_T for every T ('-' = stdout)");
  add_common(c_enum, run, false);
  bind(c_enum, "enumerate", [&] { cmd_enumerate(run, enumerate); });

  PhaseArgs phase;
  auto* c_phase = app.add_subcommand(
      "phase-diagram", "Classify (alpha, lambda). CSV columns: alpha,lambda,region");
  c_phase->add_option("--d", phase.d)->capture_default_str();
  c_phase->add_option("--resolution", phase.resolution)->capture_default_str();
  c_phase->add_option("--point", phase.point, "Classify one point: alpha,lambda")
      ->delimiter(',')
      ->expected(2);
  c_phase->add_option("--csv", phase.csv, "CSV path (default: stdout)");
  add_common(c_phase, run, false);
  bind(c_phase, "phase-diagram", [&] { cmd_phase_diagram(run, phase); });

  CodeArgs code;
  auto* c_code = app.add_subcommand("code", "Approximate codes");
  c_code->require_subcommand(1);
  add_common(c_code, run, false);
  auto* k_random = c_code->add_subcommand("random", "Write a Haar-random K-dimensional code");
  k_random->add_option("--n", code.n)->required();
  k_random->add_option("--d", code.d)->required();
  k_random->add_option("--K", code.code_k)->required();
  k_random->add_option("--out", code.out)->required();
  add_common(k_random, run, true);
  bind(k_random, "code random", [&] { cmd_code_random(run, code); });
  auto* k_cert = c_code->add_subcommand("certify", "Lower bound on the code's epsilon");
  k_cert->add_option("--code", code.code_file)->required();
  k_cert->add_option("--delta", code.delta)->required();
  k_cert->add_option("--method", code.method)
      ->check(CLI::IsMember({"optimized", "sampled"}))
      ->capture_default_str();
  add_config_options(k_cert, code.config);
  add_common(k_cert, run, true);
  bind(k_cert, "code certify", [&] { cmd_code_certify(run, code); });
  auto* k_gap = c_code->add_subcommand(
      "gap", "K B'_S - A'_S for every |S| < delta. CSV columns: subset,size,gap");
  k_gap->add_option("--code", code.code_file)->required();
  k_gap->add_option("--delta", code.delta)->required();
  k_gap->add_option("--csv", code.csv);
  add_common(k_gap, run, false);
  bind(k_gap, "code gap", [&] { cmd_code_gap(run, code); });
  auto* k_mask = c_code->add_subcommand("mask", "Sampled masking proximity at level k");
  k_mask->add_option("--code", code.code_file)->required();
  k_mask->add_option("--k", code.k)->required();
  k_mask->add_option("--pairs", code.pairs)->capture_default_str();
  add_common(k_mask, run, true);
  bind(k_mask, "code mask", [&] { cmd_code_mask(run, code); });
  auto* k_bounds = c_code->add_subcommand("bounds", "Enumerator bound checks at distance delta");
  k_bounds->add_option("--code", code.code_file)->required();
  k_bounds->add_option("--delta", code.delta)->required();
  k_bounds->add_option("--epsilon", code.epsilon, "Epsilon to test (default: certify first)");
  add_config_options(k_bounds, code.config);
  add_common(k_bounds, run, true);
  bind(k_bounds, "code bounds", [&] { cmd_code_bounds(run, code); });

  FixtureArgs fixture;
  auto* c_fix = app.add_subcommand("fixture", "Write a reference state or code file");
  c_fix->add_option("--name", fixture.name)
      ->check(CLI::IsMember({"ghz", "bell", "zero", "five-qubit"}))
      ->required();
  c_fix->add_option("--n", fixture.n)->capture_default_str();
  c_fix->add_option("--d", fixture.d)->capture_default_str();
  c_fix->add_option("--out", fixture.out)->required();
  add_common(c_fix, run, false);
  bind(c_fix, "fixture", [&] { cmd_fixture(run, fixture); });

  try {
    run.seed = default_seed();
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    action();
  } catch (const ConstraintViolation& e) {
    std::cerr << "constraint violated: " << e.what() << '\n';
    return kExitConstraint;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}
