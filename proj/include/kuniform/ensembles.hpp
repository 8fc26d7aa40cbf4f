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

#include <string>
#include <utility>
#include <vector>

#include "kuniform/layout.hpp"
#include "kuniform/rng.hpp"
#include "kuniform/state.hpp"
#include "kuniform/types.hpp"

namespace kuniform {

/// Normalized vector of i.i.d. complex Gaussians.
PureState haar_state(const QuditLayout& layout, const RngSpec& rng);

/// QR of a Ginibre matrix with the phases of R's diagonal absorbed into Q.
Matrix haar_unitary(Eigen::Index dim, const RngSpec& rng);

/// Applies a d^2 x d^2 unitary to parties (first, second), 1-based. The gate's
/// basis index is a_first * d + a_second.
PureState apply_two_qudit_gate(const PureState& state, std::pair<int, int> pair,
                               const Matrix& gate);
/// In-place kernel behind apply_two_qudit_gate; no validation of `gate`.
void apply_two_qudit_gate_inplace(const QuditLayout& layout, Vector& amplitudes,
                                  std::pair<int, int> pair, const Matrix& gate);

/// 1D open-boundary brickwork of Haar-random two-qudit gates. Layer l (0-based)
/// acts on (1,2),(3,4),... when l is even and (2,3),(4,5),... when odd.
struct BrickworkCircuit {
  QuditLayout layout;
  int depth = 0;

  /// Pairs acted on by one layer.
  std::vector<std::pair<int, int>> layer_pairs(int layer) const;
  /// Stream of the gate at (layer, first party p): stream_id = layer * n + (p - 1),
  /// under a seed mixed from the circuit-level stream.
  RngSpec gate_stream(const RngSpec& circuit_rng, int layer, int first_party) const;
};

/// Applies `depth` layers to |0...0>.
PureState simulate_brickwork(const BrickworkCircuit& circuit, const RngSpec& rng);

struct Ensemble {
  enum class Kind { kHaar, kBrickwork };
  Kind kind = Kind::kHaar;
  int depth = 0;  // brickwork only

  static Ensemble haar() { return {Kind::kHaar, 0}; }
  static Ensemble brickwork(int depth) { return {Kind::kBrickwork, depth}; }
  std::string name() const;
};

/// Draws trial `index` of an ensemble from rng.child(index).
PureState sample_state(const Ensemble& ensemble, const QuditLayout& layout,
                       const RngSpec& rng, std::uint64_t index);

struct MonteCarloSummary {
  long trials = 0;
  long successes = 0;
  double estimate = 0.0;
  double stderr_ = 0.0;

  static MonteCarloSummary from_counts(long trials, long successes);
};

/// Fraction of sampled states whose k-uniformity epsilon is <= epsilon.
MonteCarloSummary mc_uniformity_probability(const Ensemble& ensemble,
                                            const QuditLayout& layout, int k,
                                            double epsilon, long trials,
                                            const RngSpec& rng);

/// Mean and standard error of a sample.
struct SampleMean {
  double mean = 0.0;
  double stderr_ = 0.0;
  long count = 0;
};

/// Per-sample mean purity over all k-subsets, averaged over `trials` states.
SampleMean mc_mean_purity(const Ensemble& ensemble, const QuditLayout& layout,
                          int k, long trials, const RngSpec& rng);

/// Haar average of Tr rho_A^2: (d_A + d_B) / (d_A d_B + 1).
double haar_average_purity(int n, int d, int k);

/// Delta = (d^k + d^{n-k}) / (d^n + 1) - 1/d^k.
double haar_purity_gap(int n, int d, int k);

/// The normalization 72 pi^3 ln 2 of the purity concentration tail.
double levy_denominator();

/// 2 exp(-d^n delta^2 / (72 pi^3 ln 2)).
double haar_tail(int n, int d, double delta);

/// 1 - C(n,k) 2 exp(-d^n delta^2 / (72 pi^3 ln 2)), delta = eps^2 - Delta.
/// Requires eps^2 >= 2 Delta. Vacuous when the value is <= 0.
BoundValue haar_success_lower_bound(int n, int d, int k, double epsilon);

/// Failure bound for one k-subset under an eps'-approximate t-design,
/// m = floor(t/8): delta^{-2m} (2 (m/a)^m + eps'/d^{nt} (beta + mu)^{2m}).
double design_deviation_bound_per_subset(int n, int d, int k, double epsilon,
                                         int t, double eps_prime);

/// C(n,k) times the per-subset design bound. Vacuous when >= 1.
BoundValue design_deviation_bound(int n, int d, int k, double epsilon, int t,
                                  double eps_prime);

/// Classification of an (alpha, lambda) point of the asymptotic Haar
/// construction, alpha = k/n and lambda = log_d(eps)/n.
struct PhaseRegion {
  enum class Label { kHighPerformance, kNonConstructible,
                     kConstructibleNotVanishing, kInfeasible };
  bool vanishing_failure = false;       // 1 + 4 lambda > 0
  bool vanishing_proximity = false;     // lambda < -alpha
  bool linear_uniformity = false;       // 0 < alpha < 1/2
  bool constructible = false;           // lambda > -1/2 + alpha/2
  bool locally_indistinguishable = false;  // alpha + 2 lambda < 0
  Label label = Label::kInfeasible;

  std::string label_name() const;
};

PhaseRegion phase_region(double alpha, double lambda);

}  // namespace kuniform
