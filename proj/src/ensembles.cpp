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

#include "kuniform/ensembles.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace kuniform {

PureState haar_state(const QuditLayout& layout, const RngSpec& rng) {
  Rng gen(rng);
  Vector v(static_cast<Eigen::Index>(layout.dim()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = gen.complex_normal();
  return PureState::normalized(layout, std::move(v));
}

Matrix haar_unitary(Eigen::Index dim, const RngSpec& rng) {
  if (dim < 1) throw InputError("unitary dimension must be >= 1");
  Rng gen(rng);
  Matrix g(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) g(r, c) = gen.complex_normal();
  }
  const Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const auto& packed = qr.matrixQR();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex r = packed(j, j);
    const double mag = std::abs(r);
    if (mag > 0.0) q.col(j) *= r / mag;
  }
  return q;
}

void apply_two_qudit_gate_inplace(const QuditLayout& layout, Vector& amplitudes,
                                  std::pair<int, int> pair, const Matrix& gate) {
  const auto [first, second] = pair;
  const int d = layout.d();
  const std::size_t s1 = layout.stride(first);
  const std::size_t s2 = layout.stride(second);
  const Eigen::Index block = static_cast<Eigen::Index>(d) * d;
  Vector in(block);
  Vector out(block);
  for (std::size_t base = 0; base < layout.dim(); ++base) {
    if (layout.digit(base, first) != 0 || layout.digit(base, second) != 0) continue;
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        in(a * d + b) = amplitudes(static_cast<Eigen::Index>(base + a * s1 + b * s2));
      }
    }
    out.noalias() = gate * in;
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        amplitudes(static_cast<Eigen::Index>(base + a * s1 + b * s2)) = out(a * d + b);
      }
    }
  }
}

PureState apply_two_qudit_gate(const PureState& state, std::pair<int, int> pair,
                               const Matrix& gate) {
  const QuditLayout& layout = state.layout();
  const auto [first, second] = pair;
  if (first == second || first < 1 || second < 1 || first > layout.n() ||
      second > layout.n()) {
    throw InputError("invalid gate pair (" + std::to_string(first) + "," +
                     std::to_string(second) + ")");
  }
  const Eigen::Index block = static_cast<Eigen::Index>(layout.d()) * layout.d();
  if (gate.rows() != block || gate.cols() != block) {
    throw InputError("gate must be d^2 x d^2");
  }
  const double unitarity =
      (gate.adjoint() * gate - Matrix::Identity(block, block)).cwiseAbs().maxCoeff();
  if (unitarity > 1e-10) throw InputError("gate is not unitary");
  Vector amps = state.amplitudes();
  apply_two_qudit_gate_inplace(layout, amps, pair, gate);
  return PureState::normalized(layout, std::move(amps));
}

std::vector<std::pair<int, int>> BrickworkCircuit::layer_pairs(int layer) const {
  std::vector<std::pair<int, int>> pairs;
  for (int p = (layer % 2 == 0) ? 1 : 2; p + 1 <= layout.n(); p += 2) {
    pairs.emplace_back(p, p + 1);
  }
  return pairs;
}

RngSpec BrickworkCircuit::gate_stream(const RngSpec& circuit_rng, int layer,
                                      int first_party) const {
  return circuit_rng.child(static_cast<std::uint64_t>(layer) *
                               static_cast<std::uint64_t>(layout.n()) +
                           static_cast<std::uint64_t>(first_party - 1));
}

PureState simulate_brickwork(const BrickworkCircuit& circuit, const RngSpec& rng) {
  if (circuit.depth < 0) throw InputError("circuit depth must be >= 0");
  const QuditLayout& layout = circuit.layout;
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(layout.dim()));
  amps(0) = 1.0;
  const Eigen::Index block = static_cast<Eigen::Index>(layout.d()) * layout.d();
  for (int layer = 0; layer < circuit.depth; ++layer) {
    for (const auto& pair : circuit.layer_pairs(layer)) {
      const Matrix gate =
          haar_unitary(block, circuit.gate_stream(rng, layer, pair.first));
      apply_two_qudit_gate_inplace(layout, amps, pair, gate);
    }
  }
  return PureState::normalized(layout, std::move(amps));
}

std::string Ensemble::name() const {
  if (kind == Kind::kHaar) return "haar";
  return "brickwork(L=" + std::to_string(depth) + ")";
}

PureState sample_state(const Ensemble& ensemble, const QuditLayout& layout,
                       const RngSpec& rng, std::uint64_t index) {
  const RngSpec trial = rng.child(index);
  if (ensemble.kind == Ensemble::Kind::kHaar) return haar_state(layout, trial);
  return simulate_brickwork(BrickworkCircuit{layout, ensemble.depth}, trial);
}

MonteCarloSummary MonteCarloSummary::from_counts(long trials, long successes) {
  MonteCarloSummary s;
  s.trials = trials;
  s.successes = successes;
  s.estimate = static_cast<double>(successes) / static_cast<double>(trials);
  s.stderr_ = std::sqrt(s.estimate * (1.0 - s.estimate) / static_cast<double>(trials));
  return s;
}

MonteCarloSummary mc_uniformity_probability(const Ensemble& ensemble,
                                            const QuditLayout& layout, int k,
                                            double epsilon, long trials,
                                            const RngSpec& rng) {
  if (trials < 1) throw InputError("trials must be >= 1");
  if (k < 1 || k > layout.n()) throw InputError("k out of range");
  const double threshold = epsilon * epsilon;
  long successes = 0;
  for (long t = 0; t < trials; ++t) {
    const PureState psi = sample_state(ensemble, layout, rng, static_cast<std::uint64_t>(t));
    // epsilon(psi) <= eps  <=>  max(0, dev) <= eps^2
    if (std::max(0.0, max_purity_deviation(psi, k)) <= threshold) ++successes;
  }
  return MonteCarloSummary::from_counts(trials, successes);
}

SampleMean mc_mean_purity(const Ensemble& ensemble, const QuditLayout& layout,
                          int k, long trials, const RngSpec& rng) {
  if (trials < 2) throw InputError("need at least two trials for a standard error");
  const auto subsets = subsets_of_size(layout.n(), k);
  std::vector<Bipartition> parts;
  parts.reserve(subsets.size());
  for (const auto& s : subsets) parts.emplace_back(layout, s);

  double mean = 0.0;
  double m2 = 0.0;
  Matrix scratch;
  for (long t = 0; t < trials; ++t) {
    const PureState psi = sample_state(ensemble, layout, rng, static_cast<std::uint64_t>(t));
    double x = 0.0;
    for (const auto& bp : parts) {
      bp.reshape(psi.amplitudes(), scratch);
      x += Bipartition::purity(scratch);
    }
    x /= static_cast<double>(parts.size());
    const double delta = x - mean;
    mean += delta / static_cast<double>(t + 1);
    m2 += delta * (x - mean);
  }
  SampleMean out;
  out.count = trials;
  out.mean = mean;
  out.stderr_ = std::sqrt(m2 / static_cast<double>(trials - 1) / static_cast<double>(trials));
  return out;
}

double haar_average_purity(int n, int d, int k) {
  const double da = std::pow(static_cast<double>(d), k);
  const double db = std::pow(static_cast<double>(d), n - k);
  return (da + db) / (da * db + 1.0);
}

double haar_purity_gap(int n, int d, int k) {
  return haar_average_purity(n, d, k) - std::pow(static_cast<double>(d), -k);
}

double levy_denominator() {
  return 72.0 * std::pow(std::numbers::pi, 3) * std::numbers::ln2;
}

double haar_tail(int n, int d, double delta) {
  const double dn = std::pow(static_cast<double>(d), n);
  return 2.0 * std::exp(-dn * delta * delta / levy_denominator());
}

namespace {

void check_bound_params(int n, int d, int k) {
  if (n < 1 || d < 2) throw InputError("need n >= 1 and d >= 2");
  if (k < 1 || k > n) throw InputError("need 1 <= k <= n");
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

void require_gap(double eps2, double gap, const char* lhs) {
  if (eps2 < 2.0 * gap) {
    throw ConstraintViolation(std::string(lhs) + " >= 2*Delta violated: " + lhs +
                              " = " + fmt(eps2) + " < 2*Delta = " + fmt(2.0 * gap) +
                              " (Delta = " + fmt(gap) + ")");
  }
}

}  // namespace

BoundValue haar_success_lower_bound(int n, int d, int k, double epsilon) {
  check_bound_params(n, d, k);
  const double gap = haar_purity_gap(n, d, k);
  const double eps2 = epsilon * epsilon;
  require_gap(eps2, gap, "eps^2");
  const double value = 1.0 - binomial(n, k) * haar_tail(n, d, eps2 - gap);
  return {value, value <= 0.0};
}

double design_deviation_bound_per_subset(int n, int d, int k, double epsilon,
                                         int t, double eps_prime) {
  check_bound_params(n, d, k);
  if (t < 8) throw ConstraintViolation("t >= 8 violated: t = " + std::to_string(t));
  if (eps_prime < 0.0) throw InputError("eps' must be >= 0");
  const double gap = haar_purity_gap(n, d, k);
  const double eps2 = epsilon * epsilon;
  require_gap(eps2, gap, "eps^2");

  const double m = static_cast<double>(t / 8);
  const double ln_d = std::log(static_cast<double>(d));
  const double ln_a = n * ln_d - std::log(levy_denominator());
  const double mu = haar_average_purity(n, d, k);
  const double beta = std::exp(2.0 * n * ln_d);
  const double delta = std::pow(static_cast<double>(d), -k) + eps2 - mu;

  const double concentration = std::log(2.0) + m * (std::log(m) - ln_a);
  double log_sum = concentration;
  if (eps_prime > 0.0) {
    const double design = std::log(eps_prime) - n * t * ln_d + 2.0 * m * std::log(beta + mu);
    const double hi = std::max(concentration, design);
    log_sum = hi + std::log(std::exp(concentration - hi) + std::exp(design - hi));
  }
  return std::exp(-2.0 * m * std::log(delta) + log_sum);
}

BoundValue design_deviation_bound(int n, int d, int k, double epsilon, int t,
                                  double eps_prime) {
  const double value =
      binomial(n, k) * design_deviation_bound_per_subset(n, d, k, epsilon, t, eps_prime);
  return {value, value >= 1.0};
}

std::string PhaseRegion::label_name() const {
  switch (label) {
    case Label::kHighPerformance: return "high-performance";
    case Label::kNonConstructible: return "non-constructible";
    case Label::kConstructibleNotVanishing: return "constructible-but-not-vanishing";
    case Label::kInfeasible: return "infeasible";
  }
  return "infeasible";
}

PhaseRegion phase_region(double alpha, double lambda) {
  if (!(alpha > 0.0 && alpha < 0.5)) {
    throw InputError("alpha must lie in (0, 1/2), got " + fmt(alpha));
  }
  PhaseRegion r;
  r.vanishing_failure = 1.0 + 4.0 * lambda > 0.0;
  r.vanishing_proximity = lambda < -alpha;
  r.linear_uniformity = true;
  r.constructible = lambda > -0.5 + 0.5 * alpha;
  r.locally_indistinguishable = alpha + 2.0 * lambda < 0.0;
  using L = PhaseRegion::Label;
  if (lambda > 0.0) {
    // eps grows with n: no approximate state at all.
    r.label = L::kInfeasible;
  } else if (!r.vanishing_failure || !r.constructible) {
    r.label = L::kNonConstructible;
  } else if (!r.vanishing_proximity) {
    r.label = L::kConstructibleNotVanishing;
  } else {
    r.label = r.locally_indistinguishable ? L::kHighPerformance : L::kConstructibleNotVanishing;
  }
  return r;
}

}  // namespace kuniform
