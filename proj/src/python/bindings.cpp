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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kuniform/codes.hpp"
#include "kuniform/ensembles.hpp"
#include "kuniform/enumerators.hpp"
#include "kuniform/fixtures.hpp"
#include "kuniform/io.hpp"
#include "kuniform/optimizer.hpp"
#include "kuniform/state.hpp"

namespace py = pybind11;
using namespace kuniform;

namespace {

PureState make_state(const Vector& amplitudes, int n, int d) {
  return PureState(QuditLayout(n, d), amplitudes);
}

SubsetMask make_subset(const std::vector<int>& parties, int n) {
  SubsetMask s = SubsetMask::from_indices(parties);
  s.validate(n);
  return s;
}

py::dict report_dict(const UniformityReport& r) {
  py::list purities;
  for (const SubsetPurity& sp : r.subset_purities) {
    purities.append(py::make_tuple(sp.subset.indices(), sp.purity));
  }
  py::list argmax;
  for (const SubsetMask& s : r.argmax_subsets) argmax.append(s.indices());
  py::dict out;
  out["k"] = r.k;
  out["epsilon"] = r.epsilon;
  out["subset_purities"] = purities;
  out["argmax_subsets"] = argmax;
  return out;
}

py::dict bound_dict(const BoundValue& b) {
  py::dict out;
  out["value"] = b.value;
  out["vacuous"] = b.vacuous;
  return out;
}

py::dict mc_dict(const MonteCarloSummary& m) {
  py::dict out;
  out["trials"] = m.trials;
  out["successes"] = m.successes;
  out["estimate"] = m.estimate;
  out["stderr"] = m.stderr_;
  return out;
}

Ensemble make_ensemble(const std::string& name, int depth) {
  if (name == "haar") return Ensemble::haar();
  if (name == "brickwork") return Ensemble::brickwork(depth);
  throw InputError("unknown ensemble '" + name + "'");
}

CodeSpace make_code(const Matrix& isometry, int n, int d) {
  return CodeSpace(QuditLayout(n, d), isometry);
}

}  // namespace

PYBIND11_MODULE(_kuniform, m) {
  m.doc() = "Approximate k-uniform states and codes";
  m.attr("__version__") = KUNIFORM_VERSION;

  py::register_exception<ConstraintViolation>(m, "ConstraintViolation", PyExc_ValueError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

  m.def("uniformity_epsilon",
        [](const Vector& psi, int n, int d, int k) {
          return report_dict(uniformity_epsilon(make_state(psi, n, d), k));
        },
        py::arg("amplitudes"), py::arg("n"), py::arg("d"), py::arg("k"));
  m.def("subsystem_purity",
        [](const Vector& psi, int n, int d, const std::vector<int>& subset) {
          return subsystem_purity(make_state(psi, n, d), make_subset(subset, n));
        },
        py::arg("amplitudes"), py::arg("n"), py::arg("d"), py::arg("subset"));
  m.def("reduced_density_matrix",
        [](const Vector& psi, int n, int d, const std::vector<int>& subset) {
          return Matrix(partial_trace(make_state(psi, n, d), make_subset(subset, n)).entries());
        },
        py::arg("amplitudes"), py::arg("n"), py::arg("d"), py::arg("keep"));

  m.def("haar_state",
        [](int n, int d, std::uint64_t seed, std::uint64_t stream) {
          return haar_state(QuditLayout(n, d), RngSpec{seed, stream}).amplitudes();
        },
        py::arg("n"), py::arg("d"), py::arg("seed") = 1, py::arg("stream") = 0);
  m.def("brickwork_state",
        [](int n, int d, int depth, std::uint64_t seed, std::uint64_t stream, std::uint64_t trial) {
          return sample_state(Ensemble::brickwork(depth), QuditLayout(n, d), RngSpec{seed, stream},
                              trial)
              .amplitudes();
        },
        py::arg("n"), py::arg("d"), py::arg("depth"), py::arg("seed") = 1, py::arg("stream") = 0,
        py::arg("trial") = 0);
  m.def("haar_average_purity", &haar_average_purity, py::arg("n"), py::arg("d"), py::arg("k"));
  m.def("haar_success_lower_bound",
        [](int n, int d, int k, double eps) { return bound_dict(haar_success_lower_bound(n, d, k, eps)); },
        py::arg("n"), py::arg("d"), py::arg("k"), py::arg("eps"));
  m.def("design_deviation_bound",
        [](int n, int d, int k, double eps, int t, double eps_prime) {
          return bound_dict(design_deviation_bound(n, d, k, eps, t, eps_prime));
        },
        py::arg("n"), py::arg("d"), py::arg("k"), py::arg("eps"), py::arg("t"),
        py::arg("eps_prime") = 0.0);
  m.def("mc_uniformity_probability",
        [](const std::string& ensemble, int depth, int n, int d, int k, double eps, long trials,
           std::uint64_t seed, std::uint64_t stream) {
          return mc_dict(mc_uniformity_probability(make_ensemble(ensemble, depth), QuditLayout(n, d),
                                                   k, eps, trials, RngSpec{seed, stream}));
        },
        py::arg("ensemble"), py::arg("depth") = 0, py::arg("n"), py::arg("d"), py::arg("k"),
        py::arg("eps"), py::arg("trials"), py::arg("seed") = 1, py::arg("stream") = 0);
  m.def("phase_region",
        [](double alpha, double lambda) {
          const PhaseRegion r = phase_region(alpha, lambda);
          py::dict out;
          out["label"] = r.label_name();
          out["vanishing_failure"] = r.vanishing_failure;
          out["vanishing_proximity"] = r.vanishing_proximity;
          out["linear_uniformity"] = r.linear_uniformity;
          out["constructible"] = r.constructible;
          out["locally_indistinguishable"] = r.locally_indistinguishable;
          return out;
        },
        py::arg("alpha"), py::arg("lambda_"));

  m.def("minimize_epsilon",
        [](int n, int d, int k, int restarts, int iters, std::uint64_t seed, std::uint64_t stream) {
          OptimizerConfig config;
          config.restarts = restarts;
          config.max_iters = iters;
          const OptimizationResult r = minimize_epsilon(QuditLayout(n, d), k, config, RngSpec{seed, stream});
          py::dict out;
          out["epsilon_star"] = r.epsilon_star;
          out["state"] = r.best_state.amplitudes();
          out["iterations_used"] = r.iterations_used;
          out["converged"] = r.converged;
          out["restart_index"] = r.restart_index;
          out["best_history"] = r.best_history;
          return out;
        },
        py::arg("n"), py::arg("d"), py::arg("k"), py::arg("restarts") = 50, py::arg("iters") = 5000,
        py::arg("seed") = 1, py::arg("stream") = 0);
  m.def("reference_epsilon",
        [](int n, int d, int k) -> std::optional<double> {
          if (const auto ref = find_reference(n, d, k)) return ref->epsilon;
          return std::nullopt;
        },
        py::arg("n"), py::arg("d"), py::arg("k"));

  m.def("shadow",
        [](const Vector& psi, int n, int d, const std::vector<int>& t) {
          return shadow_enumerator(make_state(psi, n, d), make_subset(t, n));
        },
        py::arg("amplitudes"), py::arg("n"), py::arg("d"), py::arg("T"));
  m.def("shadow_all",
        [](const Vector& psi, int n, int d) { return shadow_all(make_state(psi, n, d)); },
        py::arg("amplitudes"), py::arg("n"), py::arg("d"));
  m.def("rains_unitary",
        [](const Matrix& m1, const Matrix& m2, int n, int d) {
          const RainsUnitary r = rains_unitary(m1, m2, QuditLayout(n, d));
          return py::make_tuple(r.Aprime, r.Bprime);
        },
        py::arg("m1"), py::arg("m2"), py::arg("n"), py::arg("d"));
  m.def("shor_laflamme",
        [](const Matrix& m1, const Matrix& m2, int n, int d) {
          const ShorLaflamme r = shor_laflamme(m1, m2, QuditLayout(n, d));
          return py::make_tuple(r.A, r.B);
        },
        py::arg("m1"), py::arg("m2"), py::arg("n"), py::arg("d"));
  m.def("f_coefficient", &f_coefficient, py::arg("d"), py::arg("n"), py::arg("t"));
  m.def("nonexistence_epsilon_bound", &nonexistence_epsilon_bound, py::arg("d"), py::arg("n"),
        py::arg("t"), py::arg("shadow"));
  m.def("hypothetical_ame_shadow",
        [](int d, int n, const std::vector<int>& t) {
          return hypothetical_ame_shadow(d, n, make_subset(t, n));
        },
        py::arg("d"), py::arg("n"), py::arg("T"));

  m.def("random_code",
        [](int n, int d, int k_dim, std::uint64_t seed, std::uint64_t stream) {
          return random_code(QuditLayout(n, d), k_dim, RngSpec{seed, stream}).isometry();
        },
        py::arg("n"), py::arg("d"), py::arg("K"), py::arg("seed") = 1, py::arg("stream") = 0);
  m.def("code_epsilon",
        [](const Matrix& v, int n, int d, int delta, const std::string& method, int restarts,
           std::uint64_t seed, std::uint64_t stream) {
          OptimizerConfig config;
          config.restarts = restarts;
          config.max_iters = 2000;
          CertificationMethod cm = CertificationMethod::kOptimized;
          if (method == "sampled") {
            cm = CertificationMethod::kSampled;
          } else if (method != "optimized") {
            throw InputError("method must be 'optimized' or 'sampled'");
          }
          const CodeCertificate c = code_epsilon(make_code(v, n, d), delta, config, RngSpec{seed, stream}, cm);
          py::dict out;
          out["epsilon_lower"] = c.epsilon_lower;
          out["worst_subset"] = c.worst_subset.indices();
          out["worst_logical"] = c.worst_logical;
          out["stationarity_residual"] = c.stationarity_residual;
          return out;
        },
        py::arg("isometry"), py::arg("n"), py::arg("d"), py::arg("delta"),
        py::arg("method") = "optimized", py::arg("restarts") = 8, py::arg("seed") = 1,
        py::arg("stream") = 0);
  m.def("code_enumerator_gap",
        [](const Matrix& v, int n, int d, const std::vector<int>& subset) {
          return code_enumerator_gap(make_code(v, n, d), make_subset(subset, n));
        },
        py::arg("isometry"), py::arg("n"), py::arg("d"), py::arg("subset"));
  m.def("masking_proximity",
        [](const Matrix& v, int n, int d, int k, int pairs, std::uint64_t seed, std::uint64_t stream) {
          return masking_proximity(make_code(v, n, d), k, pairs, RngSpec{seed, stream});
        },
        py::arg("isometry"), py::arg("n"), py::arg("d"), py::arg("k"), py::arg("pairs") = 100,
        py::arg("seed") = 1, py::arg("stream") = 0);
  m.def("net_cardinality", &net_cardinality, py::arg("eps_prime"), py::arg("K"));
  m.def("random_subspace_success_bound",
        [](int n, int d, int k_dim, int delta, double eps, double eps_prime) {
          return bound_dict(random_subspace_success_bound(n, d, k_dim, delta, eps, eps_prime));
        },
        py::arg("n"), py::arg("d"), py::arg("K"), py::arg("delta"), py::arg("eps"),
        py::arg("eps_prime"));

  m.def("ghz_state", [](int n, int d) { return ghz_state(n, d).amplitudes(); }, py::arg("n"),
        py::arg("d") = 2);
  m.def("bell_state", [] { return bell_state().amplitudes(); });
  m.def("five_qubit_code", [] { return five_qubit_code().isometry(); });

  m.def("read_state", [](const std::string& path) {
    const PureState s = read_state_file(path);
    return py::make_tuple(s.amplitudes(), s.layout().n(), s.layout().d());
  }, py::arg("path"));
  m.def("write_state",
        [](const std::string& path, const Vector& psi, int n, int d) {
          write_state_file(path, make_state(psi, n, d));
        },
        py::arg("path"), py::arg("amplitudes"), py::arg("n"), py::arg("d"));
}
