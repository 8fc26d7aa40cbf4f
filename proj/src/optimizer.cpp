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

#include "kuniform/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kuniform/ensembles.hpp"

namespace kuniform {

std::vector<double> OptimizerConfig::geometric_schedule(double from, double to, int count) {
  if (count < 1 || !(from > 0.0) || !(to > 0.0)) {
    throw InputError("geometric schedule needs count >= 1 and positive endpoints");
  }
  std::vector<double> out(static_cast<std::size_t>(count));
  if (count == 1) {
    out[0] = to;
    return out;
  }
  const double ratio = std::pow(to / from, 1.0 / (count - 1));
  double t = from;
  for (int i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = t;
    t *= ratio;
  }
  out.back() = to;
  return out;
}

void OptimizerConfig::validate() const {
  if (restarts < 1) throw InputError("restarts must be >= 1");
  if (max_iters < 0) throw InputError("max_iters must be >= 0");
  if (!(step_size > 0.0)) throw InputError("step_size must be > 0");
  if (lse_temperature_schedule.empty()) throw InputError("temperature schedule is empty");
  for (std::size_t i = 0; i < lse_temperature_schedule.size(); ++i) {
    const double t = lse_temperature_schedule[i];
    if (!(t > 0.0)) throw InputError("temperatures must be strictly positive");
    if (i > 0 && t > lse_temperature_schedule[i - 1]) {
      throw InputError("temperatures must be non-increasing");
    }
  }
  if (grad_tol < 0.0 || purity_tol < 0.0) throw InputError("tolerances must be >= 0");
}

Vector purity_gradient(const PureState& state, const SubsetMask& subset) {
  const Bipartition bp(state.layout(), subset);
  const Matrix g = Bipartition::purity_gradient(bp.reshape(state.amplitudes()));
  Vector out;
  bp.scatter(g, out);
  return out;
}

namespace {

/// Stable T ln sum exp(x_i / T).
double log_sum_exp(const std::vector<double>& x, double temperature,
                   std::vector<double>* weights) {
  const double hi = *std::max_element(x.begin(), x.end());
  double sum = 0.0;
  for (double v : x) sum += std::exp((v - hi) / temperature);
  if (weights) {
    weights->resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      (*weights)[i] = std::exp((x[i] - hi) / temperature) / sum;
    }
  }
  return hi + temperature * std::log(sum);
}

/// Precomputed k-subset bipartitions and scratch space for one layout.
class SmoothedObjective {
 public:
  SmoothedObjective(const QuditLayout& layout, int k)
      : inv_ds_(1.0 / static_cast<double>(layout.dim_of(k))) {
    for (const auto& s : subsets_of_size(layout.n(), k)) parts_.emplace_back(layout, s);
    deviations_.resize(parts_.size());
    reshaped_.resize(parts_.size());
  }

  /// Purity deviations of every subset; keeps the reshaped matrices.
  const std::vector<double>& deviations(const Vector& psi) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      parts_[i].reshape(psi, reshaped_[i]);
      deviations_[i] = Bipartition::purity(reshaped_[i]) - inv_ds_;
    }
    return deviations_;
  }

  double value(const Vector& psi, double temperature) {
    return log_sum_exp(deviations(psi), temperature, nullptr);
  }

  /// Value and Wirtinger gradient at psi.
  double value_and_gradient(const Vector& psi, double temperature, Vector& grad) {
    const double v = log_sum_exp(deviations(psi), temperature, &weights_);
    grad = Vector::Zero(psi.size());
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (weights_[i] < 1e-300) continue;
      parts_[i].scatter(Bipartition::purity_gradient(reshaped_[i]), scatter_);
      grad += weights_[i] * scatter_;
    }
    return v;
  }

  double hard_max(const Vector& psi) {
    const auto& dev = deviations(psi);
    return *std::max_element(dev.begin(), dev.end());
  }

 private:
  double inv_ds_;
  std::vector<Bipartition> parts_;
  std::vector<double> deviations_;
  std::vector<double> weights_;
  std::vector<Matrix> reshaped_;
  Vector scatter_;
};

struct RestartOutcome {
  Vector psi;
  double hard_max = 0.0;
  int iterations = 0;
  bool converged = false;
};

RestartOutcome descend(SmoothedObjective& objective, Vector psi,
                       const OptimizerConfig& config) {
  RestartOutcome out;
  const auto& schedule = config.lse_temperature_schedule;
  const int stages = static_cast<int>(schedule.size());
  int budget_left = config.max_iters;
  Vector grad;
  Vector trial;
  bool converged = false;

  for (int stage = 0; stage < stages; ++stage) {
    const double temperature = schedule[static_cast<std::size_t>(stage)];
    const int stage_budget = budget_left / (stages - stage);
    double step = config.step_size;
    converged = false;
    for (int it = 0; it < stage_budget; ++it) {
      const double f = objective.value_and_gradient(psi, temperature, grad);
      // Tangent component on the unit sphere (real inner product).
      const Complex overlap = psi.dot(grad);
      grad -= overlap.real() * psi;
      ++out.iterations;
      --budget_left;
      if (grad.norm() < config.grad_tol) {
        converged = true;
        break;
      }
      bool accepted = false;
      while (step > 1e-16) {
        trial = psi - step * grad;
        trial.normalize();
        if (objective.value(trial, temperature) < f) {
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) {
        // No descent direction at machine precision: stationary.
        converged = true;
        break;
      }
      psi.swap(trial);
      step = std::min(step * 2.0, 1e3 * config.step_size);
      if (objective.hard_max(psi) <= config.purity_tol) {
        out.psi = psi;
        out.hard_max = objective.hard_max(psi);
        out.converged = true;
        return out;
      }
    }
  }
  out.hard_max = objective.hard_max(psi);
  out.psi = std::move(psi);
  out.converged = converged;
  return out;
}

}  // namespace

double epsilon_objective(const PureState& state, int k, double temperature) {
  if (!(temperature > 0.0)) throw InputError("temperature must be > 0");
  const QuditLayout& layout = state.layout();
  if (k < 1 || k > layout.n()) throw InputError("k out of range");
  SmoothedObjective objective(layout, k);
  return objective.value(state.amplitudes(), temperature);
}

OptimizationResult minimize_epsilon(const QuditLayout& layout, int k,
                                    const OptimizerConfig& config,
                                    const RngSpec& rng) {
  config.validate();
  if (k < 1 || k > layout.n()) {
    throw InputError("k = " + std::to_string(k) + " must satisfy 1 <= k <= n");
  }
  if (layout.dim() > kOptimizerMaxDimension) {
    throw InputError("d^n = " + std::to_string(layout.dim()) +
                     " exceeds the optimizer cap of " +
                     std::to_string(kOptimizerMaxDimension));
  }

  if (k == layout.n()) {
    // Tr rho^2 = 1 for every pure state: the objective is constant.
    PureState psi = haar_state(layout, rng.child(0));
    const UniformityReport report = uniformity_epsilon(psi, k);
    return OptimizationResult{psi, report.epsilon, report.subset_purities, 0, true, 0,
                              {report.epsilon}};
  }

  SmoothedObjective objective(layout, k);
  std::optional<RestartOutcome> best;
  int best_index = 0;
  int total_iterations = 0;
  std::vector<double> history;
  for (int r = 0; r < config.restarts; ++r) {
    const PureState start = haar_state(layout, rng.child(static_cast<std::uint64_t>(r)));
    RestartOutcome outcome = descend(objective, start.amplitudes(), config);
    total_iterations += outcome.iterations;
    if (!best || outcome.hard_max < best->hard_max) {
      best = std::move(outcome);
      best_index = r;
    }
    history.push_back(std::sqrt(std::max(0.0, best->hard_max)));
    if (best->hard_max <= config.purity_tol) break;
  }

  PureState best_state = PureState::normalized(layout, best->psi);
  const UniformityReport report = uniformity_epsilon(best_state, k);
  return OptimizationResult{std::move(best_state), report.epsilon,
                            report.subset_purities, total_iterations,
                            best->converged, best_index, std::move(history)};
}

const std::vector<TableReference>& reference_table() {
  // k = floor(n/2) and k = floor(n/2) - 1 columns, plus the 3-uniform
  // five-qubit value.
  static const std::vector<TableReference> table = {
      {4, 2, 2, 0.2887},     {4, 3, 2, 2.8170e-7}, {4, 4, 2, 0.1781},
      {5, 2, 2, 3.501e-7},   {5, 3, 2, 0.0387},    {5, 4, 2, 0.1322},
      {6, 2, 3, 0.2473},     {7, 2, 3, 0.1214},
      {4, 2, 1, 0.0077},     {4, 3, 1, 1.600e-6},  {4, 4, 1, 3.726e-6},
      {5, 2, 1, 3.371e-5},   {5, 3, 1, 0.0004},    {6, 2, 2, 0.0714},
      {7, 2, 2, 0.0138},     {8, 2, 3, 0.1228},
      {5, 2, 3, 0.3536},
  };
  return table;
}

std::optional<TableReference> find_reference(int n, int d, int k) {
  for (const auto& row : reference_table()) {
    if (row.n == n && row.d == d && row.k == k) return row;
  }
  return std::nullopt;
}

TableRowResult certify_table_row(int n, int d, int k, const OptimizerConfig& config,
                                 const RngSpec& rng) {
  const auto ref = find_reference(n, d, k);
  if (!ref) {
    throw InputError("no reference value for (n, d, k) = (" + std::to_string(n) + ", " +
                     std::to_string(d) + ", " + std::to_string(k) + ")");
  }
  const QuditLayout layout(n, d);
  OptimizationResult result = minimize_epsilon(layout, k, config, rng);
  const bool ok = result.epsilon_star <= ref->epsilon + kTableTolerance;
  return TableRowResult{*ref, std::move(result), ok};
}

}  // namespace kuniform
