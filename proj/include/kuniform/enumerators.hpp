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

#include <utility>
#include <vector>

#include "kuniform/layout.hpp"
#include "kuniform/state.hpp"
#include "kuniform/types.hpp"

namespace kuniform {

/// Heisenberg-Weyl label: per-site exponents (a_i, b_i) of X^a Z^b.
class HWLabel {
 public:
  HWLabel(int d, std::vector<std::pair<int, int>> sites);

  int d() const { return d_; }
  int n() const { return static_cast<int>(sites_.size()); }
  const std::vector<std::pair<int, int>>& sites() const { return sites_; }
  int weight() const;
  SubsetMask support() const;

  /// Label number `index` in [0, d^{2n}); site i uses base-d^2 digit i
  /// (party 1 most significant), split as a = digit / d, b = digit % d.
  static HWLabel from_index(int n, int d, std::size_t index);

 private:
  int d_;
  std::vector<std::pair<int, int>> sites_;
};

/// Dense d^n x d^n matrix of (X^{a_1} Z^{b_1}) (x) ... (x) (X^{a_n} Z^{b_n}),
/// X|j> = |j+1 mod d>, Z|j> = w^j |j>, w = exp(2 pi i / d).
Matrix hw_operator(const HWLabel& label);

/// Tr_{S^c} of an operator on the layout; keep = empty gives the 1x1 trace.
Matrix operator_partial_trace(const Matrix& m, const QuditLayout& layout,
                              const SubsetMask& keep);

struct ShorLaflamme {
  std::vector<double> A;
  std::vector<double> B;
};

struct RainsUnitary {
  std::vector<double> Aprime;
  std::vector<double> Bprime;
};

struct EnumeratorReport {
  std::vector<double> A;
  std::vector<double> B;
  std::vector<double> Aprime;
  std::vector<double> Bprime;
  bool has_shor_laflamme = false;
};

/// Largest log2 of the label count d^{2n} for brute-force enumeration.
inline constexpr double kShorLaflammeMaxLabelBits = 24.0;

/// Whether the d^{2n}-label enumeration is within the cap.
bool shor_laflamme_feasible(const QuditLayout& layout);

/// A_j = sum_{wt E = j} Tr(E M1) Tr(E^dagger M2), B_j = sum Tr(E M1 E^dagger M2),
/// over all Heisenberg-Weyl labels. Real parts are reported; for Hermitian
/// inputs the sums are real.
ShorLaflamme shor_laflamme(const Matrix& m1, const Matrix& m2, const QuditLayout& layout);

/// A'_j = sum_{|T|=j} Tr[(M1)_T (M2)_T], B'_j = sum_{|T|=j} Tr[(M1)_{T^c} (M2)_{T^c}].
RainsUnitary rains_unitary(const Matrix& m1, const Matrix& m2, const QuditLayout& layout);

/// Per-subset A'_T, indexed by bitmask.
std::vector<double> rains_per_subset(const Matrix& m1, const Matrix& m2,
                                     const QuditLayout& layout);

EnumeratorReport enumerator_report(const Matrix& m1, const Matrix& m2,
                                   const QuditLayout& layout, bool include_shor_laflamme);

/// s_T(rho) = sum_{S subset [n]} (-1)^{|S cap T|} Tr rho_S^2.
double shadow_enumerator(const DensityMatrix& rho, const QuditLayout& layout,
                         const SubsetMask& t);
/// Same quantity for a pure state, from its marginal purities.
double shadow_enumerator(const PureState& state, const SubsetMask& t);
/// s_T for every T, indexed by bitmask, for a pure state.
std::vector<double> shadow_all(const PureState& state);

/// f(d,n,t) = sum_{l <= t/2} sum_{k' <= n-t} C(t,2l) C(n-t,k')
///            d^{2 max(floor(n/2) - (2l+k'), (2l+k') - ceil(n/2))}.
double f_coefficient(int d, int n, int t);

/// sqrt(-s_T / f(d,n,t)); throws ConstraintViolation when s_T >= 0.
double nonexistence_epsilon_bound(int d, int n, int t, double shadow);

/// s_T evaluated on the purity profile Tr rho_S^2 = d^{-min(|S|, n-|S|)}.
double hypothetical_ame_shadow(int d, int n, const SubsetMask& t);

struct PureDistanceCertificate {
  double gap = 0.0;        // K B'_{delta-1}(P~,P~) - A'_{delta-1}(P~,P~)
  double aprime = 0.0;     // A'_{delta-1}(P~,P~)
  double bprime = 0.0;     // B'_{delta-1}(P~,P~)
  double pure_target = 0.0;  // C(n, delta-1) d^{1-delta}
  bool is_pure = false;
};

inline constexpr double kCertificateTol = 1e-8;

/// Distance/purity test of a rank-K projector via the unitary enumerators of
/// P~ = P/K at weight delta-1.
PureDistanceCertificate pure_distance_certificate(const Matrix& projector, int k_dim,
                                                  int delta, const QuditLayout& layout);

}  // namespace kuniform
