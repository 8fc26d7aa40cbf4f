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

#include <cstdint>
#include <utility>
#include <vector>

#include "kuniform/layout.hpp"
#include "kuniform/types.hpp"

namespace kuniform {

/// Normalized amplitude vector over a qudit layout.
class PureState {
 public:
  /// Takes amplitudes as given; throws InputError unless the length is d^n
  /// and the squared norm is 1 within 1e-10.
  PureState(QuditLayout layout, Vector amplitudes);

  /// Rescales to unit norm; throws InputError on a zero vector.
  static PureState normalized(QuditLayout layout, Vector amplitudes);

  /// Computational basis state with the given flat index.
  static PureState basis(QuditLayout layout, std::size_t index);

  const QuditLayout& layout() const { return layout_; }
  const Vector& amplitudes() const { return amplitudes_; }

 private:
  QuditLayout layout_;
  Vector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite matrix (checked at 1e-10).
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix entries);

  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }
  double purity() const { return entries_.squaredNorm(); }
  RealVector eigenvalues() const;

 private:
  Matrix entries_;
};

/// Index map that reshapes a flat amplitude vector into the d_S x d_{S^c}
/// matrix M with rho_S = M M^dagger. Row and column digits follow the
/// increasing party order of S and of its complement.
class Bipartition {
 public:
  Bipartition(const QuditLayout& layout, const SubsetMask& keep);

  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }
  const SubsetMask& keep() const { return keep_; }

  void reshape(const Vector& amplitudes, Matrix& out) const;
  Matrix reshape(const Vector& amplitudes) const;
  /// Inverse of reshape: writes matrix entries back to flat positions.
  void scatter(const Matrix& m, Vector& out) const;

  /// Flat index of each column-major slot (inverse of the reshape map).
  std::vector<std::uint32_t> flat_indices() const;

  /// Tr rho_S^2 from a reshaped matrix, using the smaller Gram product.
  static double purity(const Matrix& m);
  /// 2 (rho_S (x) I) psi in reshaped form: 2 M M^dagger M.
  static Matrix purity_gradient(const Matrix& m);

 private:
  SubsetMask keep_;
  Eigen::Index rows_ = 1;
  Eigen::Index cols_ = 1;
  std::vector<std::uint32_t> position_;  // flat index -> column-major slot
};

struct SubsetPurity {
  SubsetMask subset;
  double purity = 0.0;
};

struct UniformityReport {
  int k = 0;
  double epsilon = 0.0;
  /// Every k-subset, in lexicographic order.
  std::vector<SubsetPurity> subset_purities;
  /// Subsets within 1e-12 of the maximal deviation, lexicographic.
  std::vector<SubsetMask> argmax_subsets;
};

/// rho_S = Tr_{S^c} |psi><psi|. An empty `keep` yields the 1x1 matrix [1].
DensityMatrix partial_trace(const PureState& state, const SubsetMask& keep);

/// Tr rho_S^2.
double subsystem_purity(const PureState& state, const SubsetMask& subset);

/// max over |S| = k of sqrt(max(0, Tr rho_S^2 - 1/d_S)).
UniformityReport uniformity_epsilon(const PureState& state, int k);

/// max over |S| = k of Tr rho_S^2 - 1/d_S, without building a report.
double max_purity_deviation(const PureState& state, int k);

/// Hilbert-Schmidt distance || rho_S - I/d_S ||.
double hs_distance_to_mixed(const PureState& state, const SubsetMask& subset);

/// d^levels * epsilon: an epsilon-approximate k-uniform state is a
/// d*epsilon-approximate (k-1)-uniform state.
double demoted_epsilon(double epsilon, int d, int levels);

struct MeasurementEstimate {
  /// 1 / (ln d_S - S(rho_S)), +inf when the denominator is <= 1e-14.
  double exact = 0.0;
  /// 2 / (d_S eps_S^2), +inf when eps_S^2 <= 1e-14.
  double bound = 0.0;
};

/// Number of measurements needed to tell rho_S apart from I/d_S.
MeasurementEstimate required_measurements(const PureState& state,
                                          const SubsetMask& subset);

/// 2 / (d_S eps_S^2), or +inf when eps_S^2 <= 1e-14.
double measurement_bound(double subsystem_dim, double eps_s);

/// Von Neumann entropy in nats.
double von_neumann_entropy(const DensityMatrix& rho);

}  // namespace kuniform
