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

#include "kuniform/state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kuniform {
namespace {

constexpr double kNormTol = 1e-10;
constexpr double kTieTol = 1e-12;
constexpr double kInfiniteDenominator = 1e-14;

void check_subset(const QuditLayout& layout, const SubsetMask& subset) {
  subset.validate(layout.n());
}

}  // namespace

PureState::PureState(QuditLayout layout, Vector amplitudes)
    : layout_(layout), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != layout_.dim()) {
    throw InputError("amplitude vector has length " +
                     std::to_string(amplitudes_.size()) + ", expected " +
                     std::to_string(layout_.dim()));
  }
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTol) {
    throw InputError("state is not normalized: squared norm " +
                     std::to_string(norm2));
  }
}

PureState PureState::normalized(QuditLayout layout, Vector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw InputError("cannot normalize a zero or non-finite vector");
  }
  amplitudes /= norm;
  return PureState(layout, std::move(amplitudes));
}

PureState PureState::basis(QuditLayout layout, std::size_t index) {
  if (index >= layout.dim()) throw InputError("basis index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(layout.dim()));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(layout, std::move(v));
}

DensityMatrix::DensityMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw InputError("density matrix must be square and non-empty");
  }
  const double herm = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kNormTol) {
    throw InputError("density matrix is not Hermitian (deviation " +
                     std::to_string(herm) + ")");
  }
  const double tr = entries_.trace().real();
  if (std::abs(tr - 1.0) > kNormTol) {
    throw InputError("density matrix trace " + std::to_string(tr) + " != 1");
  }
  const RealVector ev = eigenvalues();
  if (ev.minCoeff() < -kNormTol) {
    throw InputError("density matrix has a negative eigenvalue " +
                     std::to_string(ev.minCoeff()));
  }
}

RealVector DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

Bipartition::Bipartition(const QuditLayout& layout, const SubsetMask& keep)
    : keep_(keep) {
  check_subset(layout, keep);
  const int d = layout.d();
  const int n = layout.n();
  rows_ = static_cast<Eigen::Index>(layout.dim_of(keep.size()));
  cols_ = static_cast<Eigen::Index>(layout.dim() / static_cast<std::size_t>(rows_));

  // Row/column weight contributed by each party's digit.
  std::vector<std::size_t> weight(static_cast<std::size_t>(n));
  std::vector<bool> in_keep(static_cast<std::size_t>(n));
  std::size_t rw = 1;
  std::size_t cw = 1;
  for (int p = n; p >= 1; --p) {
    const auto i = static_cast<std::size_t>(p - 1);
    in_keep[i] = keep.contains(p);
    if (in_keep[i]) {
      weight[i] = rw;
      rw *= static_cast<std::size_t>(d);
    } else {
      weight[i] = cw;
      cw *= static_cast<std::size_t>(d);
    }
  }

  position_.resize(layout.dim());
  std::vector<int> digits(static_cast<std::size_t>(n), 0);
  std::size_t row = 0;
  std::size_t col = 0;
  const auto ld = static_cast<std::size_t>(rows_);
  for (std::size_t j = 0; j < layout.dim(); ++j) {
    position_[j] = static_cast<std::uint32_t>(row + col * ld);
    // Increment the base-d counter, least significant party first.
    for (int p = n - 1; p >= 0; --p) {
      const auto i = static_cast<std::size_t>(p);
      std::size_t& acc = in_keep[i] ? row : col;
      if (++digits[i] < d) {
        acc += weight[i];
        break;
      }
      digits[i] = 0;
      acc -= weight[i] * static_cast<std::size_t>(d - 1);
    }
  }
}

void Bipartition::reshape(const Vector& amplitudes, Matrix& out) const {
  out.resize(rows_, cols_);
  Complex* data = out.data();
  const Complex* src = amplitudes.data();
  const std::size_t count = position_.size();
  for (std::size_t j = 0; j < count; ++j) data[position_[j]] = src[j];
}

Matrix Bipartition::reshape(const Vector& amplitudes) const {
  Matrix m;
  reshape(amplitudes, m);
  return m;
}

void Bipartition::scatter(const Matrix& m, Vector& out) const {
  out.resize(static_cast<Eigen::Index>(position_.size()));
  const Complex* data = m.data();
  Complex* dst = out.data();
  const std::size_t count = position_.size();
  for (std::size_t j = 0; j < count; ++j) dst[j] = data[position_[j]];
}

std::vector<std::uint32_t> Bipartition::flat_indices() const {
  std::vector<std::uint32_t> out(position_.size());
  for (std::size_t j = 0; j < position_.size(); ++j) {
    out[position_[j]] = static_cast<std::uint32_t>(j);
  }
  return out;
}

double Bipartition::purity(const Matrix& m) {
  if (m.rows() <= m.cols()) return (m * m.adjoint()).squaredNorm();
  return (m.adjoint() * m).squaredNorm();
}

Matrix Bipartition::purity_gradient(const Matrix& m) {
  if (m.rows() <= m.cols()) {
    const Matrix gram = m * m.adjoint();
    return 2.0 * gram * m;
  }
  const Matrix gram = m.adjoint() * m;
  return 2.0 * m * gram;
}

DensityMatrix partial_trace(const PureState& state, const SubsetMask& keep) {
  const Bipartition bp(state.layout(), keep);
  const Matrix m = bp.reshape(state.amplitudes());
  Matrix rho = m * m.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(std::move(rho));
}

double subsystem_purity(const PureState& state, const SubsetMask& subset) {
  const Bipartition bp(state.layout(), subset);
  return Bipartition::purity(bp.reshape(state.amplitudes()));
}

UniformityReport uniformity_epsilon(const PureState& state, int k) {
  const QuditLayout& layout = state.layout();
  if (k < 1 || k > layout.n()) {
    throw InputError("k = " + std::to_string(k) + " must satisfy 1 <= k <= n = " +
                     std::to_string(layout.n()));
  }
  UniformityReport report;
  report.k = k;
  const double inv_ds = 1.0 / static_cast<double>(layout.dim_of(k));
  double worst = -std::numeric_limits<double>::infinity();
  Matrix scratch;
  for (const SubsetMask& s : subsets_of_size(layout.n(), k)) {
    const Bipartition bp(layout, s);
    bp.reshape(state.amplitudes(), scratch);
    const double p = Bipartition::purity(scratch);
    report.subset_purities.push_back({s, p});
    worst = std::max(worst, p - inv_ds);
  }
  for (const auto& sp : report.subset_purities) {
    if (sp.purity - inv_ds >= worst - kTieTol) {
      report.argmax_subsets.push_back(sp.subset);
    }
  }
  report.epsilon = std::sqrt(std::max(0.0, worst));
  return report;
}

double max_purity_deviation(const PureState& state, int k) {
  const QuditLayout& layout = state.layout();
  if (k < 1 || k > layout.n()) throw InputError("k out of range");
  const double inv_ds = 1.0 / static_cast<double>(layout.dim_of(k));
  double worst = -std::numeric_limits<double>::infinity();
  Matrix scratch;
  for (const SubsetMask& s : subsets_of_size(layout.n(), k)) {
    const Bipartition bp(layout, s);
    bp.reshape(state.amplitudes(), scratch);
    worst = std::max(worst, Bipartition::purity(scratch) - inv_ds);
  }
  return worst;
}

double hs_distance_to_mixed(const PureState& state, const SubsetMask& subset) {
  const DensityMatrix rho = partial_trace(state, subset);
  const auto ds = static_cast<Eigen::Index>(rho.dim());
  const Matrix identity = Matrix::Identity(ds, ds) / static_cast<double>(ds);
  return (rho.entries() - identity).norm();
}

double demoted_epsilon(double epsilon, int d, int levels) {
  if (epsilon < 0.0) throw InputError("epsilon must be >= 0");
  if (levels < 0) throw InputError("levels must be >= 0");
  if (d < 2) throw InputError("d must be >= 2");
  return std::pow(static_cast<double>(d), levels) * epsilon;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const RealVector ev = rho.eigenvalues();
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > 0.0) s -= ev(i) * std::log(ev(i));
  }
  return s;
}

double measurement_bound(double subsystem_dim, double eps_s) {
  const double denom = subsystem_dim * eps_s * eps_s;
  if (denom <= kInfiniteDenominator) return std::numeric_limits<double>::infinity();
  return 2.0 / denom;
}

MeasurementEstimate required_measurements(const PureState& state,
                                          const SubsetMask& subset) {
  const DensityMatrix rho = partial_trace(state, subset);
  const double ds = static_cast<double>(rho.dim());
  MeasurementEstimate out;
  const double relative_entropy = std::log(ds) - von_neumann_entropy(rho);
  out.exact = relative_entropy <= kInfiniteDenominator
                  ? std::numeric_limits<double>::infinity()
                  : 1.0 / relative_entropy;
  const double eps_s = std::sqrt(std::max(0.0, rho.purity() - 1.0 / ds));
  out.bound = measurement_bound(ds, eps_s);
  return out;
}

}  // namespace kuniform
