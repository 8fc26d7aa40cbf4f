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

#pragma once

#include <optional>
#include <vector>

#include "kuniform/layout.hpp"
#include "kuniform/rng.hpp"
#include "kuniform/state.hpp"
#include "kuniform/types.hpp"

namespace kuniform {

struct OptimizerConfig {
  int restarts = 50;
  int max_iters = 5000;
  double step_size = 0.05;
  /// Log-sum-exp temperatures, strictly positive and non-increasing.
  std::vector<double> lse_temperature_schedule = geometric_schedule(1e-1, 1e-4, 7);
  double grad_tol = 1e-9;
  /// Stop early once the hard-max purity deviation drops below this.
  double purity_tol = 1e-14;

  /// `count` temperatures from `from` down to `to`, geometrically spaced.
  static std::vector<double> geometric_schedule(double from, double to, int count);
  /// Throws InputError if the invariants above fail.
  void validate() const;
};

struct OptimizationResult {
  PureState best_state;
  double epsilon_star = 0.0;
  std::vector<SubsetPurity> subset_purities;
  int iterations_used = 0;
  bool converged = false;
  int restart_index = 0;
  /// Best hard-max epsilon seen after each restart (non-increasing).
  std::vector<double> best_history;
};

/// d(Tr rho_S^2)/d(conj c) = 2 (rho_S (x) I_{S^c}) |psi>, flat layout order.
Vector purity_gradient(const PureState& state, const SubsetMask& subset);

/// T ln sum_{|S|=k} exp((Tr rho_S^2 - 1/d_S) / T).
double epsilon_objective(const PureState& state, int k, double temperature);

/// Largest supported d^n for the optimizer.
inline constexpr std::size_t kOptimizerMaxDimension = std::size_t{1} << 14;

/// Multistart projected gradient descent on the smoothed worst-case purity
/// deviation over all k-subsets.
OptimizationResult minimize_epsilon(const QuditLayout& layout, int k,
                                    const OptimizerConfig& config,
                                    const RngSpec& rng);

struct TableReference {
  int n = 0;
  int d = 0;
  int k = 0;
  double epsilon = 0.0;
};

/// Published approximate-uniform epsilon values, keyed by (n, d, k).
const std::vector<TableReference>& reference_table();
std::optional<TableReference> find_reference(int n, int d, int k);

struct TableRowResult {
  TableReference reference;
  OptimizationResult result;
  bool within_tolerance = false;
};

inline constexpr double kTableTolerance = 2e-3;

/// Runs minimize_epsilon on a reference row; passes if eps* <= reference + 2e-3.
TableRowResult certify_table_row(int n, int d, int k, const OptimizerConfig& config,
                                 const RngSpec& rng);

}  // namespace kuniform
