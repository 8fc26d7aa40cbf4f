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

#include "kuniform/layout.hpp"
#include "kuniform/optimizer.hpp"
#include "kuniform/rng.hpp"
#include "kuniform/state.hpp"
#include "kuniform/types.hpp"

namespace kuniform {

/// K-dimensional subspace given by an isometry V (d^n x K, orthonormal columns).
class CodeSpace {
 public:
  /// Throws InputError unless V^dagger V = I_K within 1e-10.
  CodeSpace(QuditLayout layout, Matrix isometry);

  const QuditLayout& layout() const { return layout_; }
  int k_dim() const { return static_cast<int>(isometry_.cols()); }
  const Matrix& isometry() const { return isometry_; }
  /// P = V V^dagger.
  Matrix projector() const { return isometry_ * isometry_.adjoint(); }
  /// V c for a logical vector c (normalized).
  PureState encode(const Vector& logical) const;
  PureState codeword(int column) const;

 private:
  QuditLayout layout_;
  Matrix isometry_;
};

/// First K columns of a Haar-random d^n unitary.
CodeSpace random_code(const QuditLayout& layout, int k_dim, const RngSpec& rng);

enum class CertificationMethod { kSampled, kOptimized };
std::string method_name(CertificationMethod method);

struct CodeCertificate {
  int delta = 0;
  /// max over |S| = delta-1 and the explored logical states of
  /// sqrt(max(0, Tr rho_S^2 - 1/d_S)); a lower bound on the code's epsilon.
  double epsilon_lower = 0.0;
  CertificationMethod method = CertificationMethod::kOptimized;
  int samples_or_restarts = 0;
  SubsetMask worst_subset;
  Vector worst_logical;
  /// Norm of the projected gradient at the reported maximizer (optimized only).
  double stationarity_residual = 0.0;
  RngSpec rng;
};

/// Number of logical-sphere samples used by the sampled method.
inline constexpr int kSampledLogicalStates = 2000;

/// Inner maximization of the marginal purity over the code space.
/// kOptimized runs config.restarts projected-gradient ascents per subset (plus
/// a 100 x 200 Bloch-sphere grid seed when K = 2); kSampled evaluates
/// kSampledLogicalStates Haar-random logical states.
CodeCertificate code_epsilon(const CodeSpace& code, int delta,
                             const OptimizerConfig& config, const RngSpec& rng,
                             CertificationMethod method = CertificationMethod::kOptimized);

/// (5/eps')^{2K}; +inf on overflow.
double net_cardinality(double eps_prime, int k_dim);

/// K B'_S(P,P) - A'_S(P,P) = K Tr P_{S^c}^2 - Tr P_S^2, P = V V^dagger.
double code_enumerator_gap(const CodeSpace& code, const SubsetMask& subset);

/// Haar average of gap / (K^2 (K+1)): (1 - 1/K)(d_S - 1/d_S)/(d^n - 1/d^n).
double random_code_average_gap(int n, int d, int k_dim, int subset_size);

/// Checks K B'_S - A'_S <= K^2 (K+1) eps^2 d_S for all |S| < delta and the
/// aggregated K B'_i - A'_i <= C(n,i) K^2 (K+1) eps^2 d^i for all i < delta.
bool gap_bound_check(const CodeSpace& code, int delta, double epsilon);

/// Checks K^2/d_S <= A'_S <= K^2/d_S + K^2 eps^2 and
/// K/d_S <= B'_S <= K [1/d_S + eps^2 (1 + (K+1) d_S)] for all |S| < delta.
bool enumerator_bounds_check(const CodeSpace& code, int delta, double epsilon);

/// Largest sampled Hilbert-Schmidt distance between k-party marginals of two
/// encoded logical states, over all |S| = k.
double masking_proximity(const CodeSpace& code, int k, int pair_samples,
                         const RngSpec& rng);

/// 1 - (5/eps')^{2K} C(n, delta-1) 2 exp(-d^n mu^2 / (72 pi^3 ln 2)),
/// mu = eps^2 - 2 eps' - Delta. Requires eps^2 - 2 eps' >= 2 Delta.
BoundValue random_subspace_success_bound(int n, int d, int k_dim, int delta,
                                         double epsilon, double eps_prime);

/// (5/eps'_net)^{2K} C(n, delta-1) times the per-subset design deviation bound
/// at eps^2 -> eps^2 - 2 eps'_net.
BoundValue circuit_code_failure_bound(int n, int d, int k_dim, int delta, double epsilon,
                                      int t, double eps_prime_design, double eps_prime_net);

}  // namespace kuniform
