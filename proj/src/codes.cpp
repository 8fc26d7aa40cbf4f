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

#include "kuniform/codes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "kuniform/ensembles.hpp"
#include "kuniform/enumerators.hpp"

namespace kuniform {

CodeSpace::CodeSpace(QuditLayout layout, Matrix isometry)
    : layout_(layout), isometry_(std::move(isometry)) {
  if (static_cast<std::size_t>(isometry_.rows()) != layout_.dim()) {
    throw InputError("isometry must have d^n = " + std::to_string(layout_.dim()) + " rows");
  }
  if (isometry_.cols() < 1) throw InputError("code dimension K must be >= 1");
  const auto k = isometry_.cols();
  const double dev =
      (isometry_.adjoint() * isometry_ - Matrix::Identity(k, k)).cwiseAbs().maxCoeff();
  if (dev > 1e-10) {
    throw InputError("isometry columns are not orthonormal (deviation " +
                     std::to_string(dev) + ")");
  }
}

PureState CodeSpace::encode(const Vector& logical) const {
  if (logical.size() != isometry_.cols()) throw InputError("logical vector must have length K");
  return PureState::normalized(layout_, isometry_ * logical);
}

PureState CodeSpace::codeword(int column) const {
  if (column < 0 || column >= k_dim()) throw InputError("codeword index out of range");
  return PureState::normalized(layout_, isometry_.col(column));
}

CodeSpace random_code(const QuditLayout& layout, int k_dim, const RngSpec& rng) {
  if (k_dim < 1 || static_cast<std::size_t>(k_dim) > layout.dim()) {
    throw InputError("code dimension K = " + std::to_string(k_dim) +
                     " must satisfy 1 <= K <= d^n = " + std::to_string(layout.dim()));
  }
  const Matrix u = haar_unitary(static_cast<Eigen::Index>(layout.dim()), rng);
  return CodeSpace(layout, u.leftCols(k_dim));
}

std::string method_name(CertificationMethod method) {
  return method == CertificationMethod::kSampled ? "sampled" : "optimized";
}

namespace {

Vector random_logical(int k_dim, Rng& gen) {
  Vector c(k_dim);
  for (int i = 0; i < k_dim; ++i) c(i) = gen.complex_normal();
  return c.normalized();
}

/// Marginal purity on one subset as a function of the logical vector.
class LogicalPurity {
 public:
  LogicalPurity(const CodeSpace& code, const SubsetMask& subset)
      : bp_(code.layout(), subset) {
    for (int a = 0; a < code.k_dim(); ++a) {
      basis_.push_back(bp_.reshape(code.isometry().col(a)));
    }
  }

  double value(const Vector& c) {
    combine(c);
    return Bipartition::purity(work_);
  }

  /// Value and d/d(conj c) of the purity.
  double value_and_gradient(const Vector& c, Vector& grad) {
    combine(c);
    const double v = Bipartition::purity(work_);
    const Matrix g = Bipartition::purity_gradient(work_);
    grad.resize(c.size());
    for (Eigen::Index a = 0; a < c.size(); ++a) {
      grad(a) = basis_[static_cast<std::size_t>(a)].cwiseProduct(g.conjugate()).sum();
      grad(a) = std::conj(grad(a));
    }
    return v;
  }

  const Matrix& marginal_factor(const Vector& c) {
    combine(c);
    return work_;
  }

 private:
  void combine(const Vector& c) {
    work_ = c(0) * basis_[0];
    for (std::size_t a = 1; a < basis_.size(); ++a) {
      work_ += c(static_cast<Eigen::Index>(a)) * basis_[a];
    }
  }

  Bipartition bp_;
  std::vector<Matrix> basis_;
  Matrix work_;
};

struct AscentResult {
  Vector c;
  double purity = 0.0;
  double residual = 0.0;
};

AscentResult ascend(LogicalPurity& f, Vector c, const OptimizerConfig& config) {
  Vector grad;
  Vector trial;
  double step = config.step_size;
  double value = f.value_and_gradient(c, grad);
  double residual = 0.0;
  for (int it = 0; it < config.max_iters; ++it) {
    grad -= c.dot(grad).real() * c;
    residual = grad.norm();
    if (residual < config.grad_tol) break;
    bool accepted = false;
    while (step > 1e-16) {
      trial = (c + step * grad).normalized();
      if (f.value(trial) > value) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    c.swap(trial);
    step *= 2.0;
    value = f.value_and_gradient(c, grad);
  }
  grad -= c.dot(grad).real() * c;
  return {c, value, grad.norm()};
}

/// Best point of a 100 x 200 (theta, phi) grid on the logical Bloch sphere.
Vector bloch_grid_seed(LogicalPurity& f) {
  constexpr int kTheta = 100;
  constexpr int kPhi = 200;
  Vector best(2);
  double best_value = -1.0;
  Vector c(2);
  for (int i = 0; i < kTheta; ++i) {
    const double theta = std::numbers::pi * (i + 0.5) / kTheta;
    for (int j = 0; j < kPhi; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / kPhi;
      c(0) = std::cos(theta / 2.0);
      c(1) = std::polar(std::sin(theta / 2.0), phi);
      const double v = f.value(c);
      if (v > best_value) {
        best_value = v;
        best = c;
      }
    }
  }
  return best;
}

}  // namespace

CodeCertificate code_epsilon(const CodeSpace& code, int delta,
                             const OptimizerConfig& config, const RngSpec& rng,
                             CertificationMethod method) {
  config.validate();
  const QuditLayout& layout = code.layout();
  const int k = delta - 1;
  if (k < 1 || k > layout.n()) {
    throw InputError("delta = " + std::to_string(delta) + " must satisfy 1 <= delta-1 <= n");
  }
  const int kd = code.k_dim();
  const double inv_ds = 1.0 / static_cast<double>(layout.dim_of(k));

  CodeCertificate cert;
  cert.delta = delta;
  cert.method = method;
  cert.rng = rng;
  double best_dev = -std::numeric_limits<double>::infinity();

  const auto subsets = subsets_of_size(layout.n(), k);
  for (std::size_t si = 0; si < subsets.size(); ++si) {
    LogicalPurity f(code, subsets[si]);
    Rng gen(rng.child(si));
    auto consider = [&](const Vector& c, double purity, double residual) {
      if (purity - inv_ds > best_dev) {
        best_dev = purity - inv_ds;
        cert.worst_subset = subsets[si];
        cert.worst_logical = c;
        cert.stationarity_residual = residual;
      }
    };

    if (kd == 1) {
      Vector c = Vector::Ones(1);
      consider(c, f.value(c), 0.0);
      cert.samples_or_restarts = 1;
      continue;
    }
    if (method == CertificationMethod::kSampled) {
      for (int s = 0; s < kSampledLogicalStates; ++s) {
        const Vector c = random_logical(kd, gen);
        consider(c, f.value(c), 0.0);
      }
      cert.samples_or_restarts = kSampledLogicalStates;
      continue;
    }
    for (int r = 0; r < config.restarts; ++r) {
      const AscentResult a = ascend(f, random_logical(kd, gen), config);
      consider(a.c, a.purity, a.residual);
    }
    if (kd == 2) {
      const AscentResult a = ascend(f, bloch_grid_seed(f), config);
      consider(a.c, a.purity, a.residual);
    }
    cert.samples_or_restarts = config.restarts;
  }
  cert.epsilon_lower = std::sqrt(std::max(0.0, best_dev));
  return cert;
}

double net_cardinality(double eps_prime, int k_dim) {
  if (!(eps_prime > 0.0 && eps_prime < 1.0)) throw InputError("eps' must lie in (0, 1)");
  if (k_dim < 1) throw InputError("K must be >= 1");
  return std::pow(5.0 / eps_prime, 2.0 * k_dim);
}

double code_enumerator_gap(const CodeSpace& code, const SubsetMask& subset) {
  const QuditLayout& layout = code.layout();
  subset.validate(layout.n());
  // Tr P_S^2 = ||V_S-reshaped Gram||: P_S = sum_a M_a M_a^dagger.
  const Bipartition keep(layout, subset);
  const Bipartition rest(layout, subset.complement(layout.n()));
  auto marginal_purity = [&](const Bipartition& bp) {
    Matrix acc = Matrix::Zero(bp.rows(), bp.rows());
    for (int a = 0; a < code.k_dim(); ++a) {
      const Matrix m = bp.reshape(code.isometry().col(a));
      acc.noalias() += m * m.adjoint();
    }
    return acc.squaredNorm();
  };
  return code.k_dim() * marginal_purity(rest) - marginal_purity(keep);
}

double random_code_average_gap(int n, int d, int k_dim, int subset_size) {
  const double ds = std::pow(static_cast<double>(d), subset_size);
  const double dn = std::pow(static_cast<double>(d), n);
  return (1.0 - 1.0 / k_dim) * (ds - 1.0 / ds) / (dn - 1.0 / dn);
}

namespace {

constexpr double kBoundSlack = 1e-8;

/// Tr P_S^2 for an unnormalized projector P = V V^dagger.
double projector_marginal_purity(const CodeSpace& code, const SubsetMask& subset) {
  const Bipartition bp(code.layout(), subset);
  Matrix acc = Matrix::Zero(bp.rows(), bp.rows());
  for (int a = 0; a < code.k_dim(); ++a) {
    const Matrix m = bp.reshape(code.isometry().col(a));
    acc.noalias() += m * m.adjoint();
  }
  return acc.squaredNorm();
}

}  // namespace

bool gap_bound_check(const CodeSpace& code, int delta, double epsilon) {
  const QuditLayout& layout = code.layout();
  const double kd = code.k_dim();
  const double coeff = kd * kd * (kd + 1.0) * epsilon * epsilon;
  for (int i = 0; i < delta && i <= layout.n(); ++i) {
    const double di = std::pow(static_cast<double>(layout.d()), i);
    double aggregate = 0.0;
    for (const SubsetMask& s : subsets_of_size(layout.n(), i)) {
      const double gap = code_enumerator_gap(code, s);
      if (gap > coeff * di + kBoundSlack) return false;
      aggregate += gap;
    }
    if (aggregate > binomial(layout.n(), i) * coeff * di + kBoundSlack) return false;
  }
  return true;
}

bool enumerator_bounds_check(const CodeSpace& code, int delta, double epsilon) {
  const QuditLayout& layout = code.layout();
  const int n = layout.n();
  const double kd = code.k_dim();
  const double eps2 = epsilon * epsilon;
  for (int i = 0; i < delta && i <= n; ++i) {
    const double ds = std::pow(static_cast<double>(layout.d()), i);
    for (const SubsetMask& s : subsets_of_size(n, i)) {
      const double a = projector_marginal_purity(code, s);
      const double b = projector_marginal_purity(code, s.complement(n));
      if (a < kd * kd / ds - kBoundSlack) return false;
      if (a > kd * kd / ds + kd * kd * eps2 + kBoundSlack) return false;
      if (b < kd / ds - kBoundSlack) return false;
      if (b > kd * (1.0 / ds + eps2 * (1.0 + (kd + 1.0) * ds)) + kBoundSlack) return false;
    }
  }
  return true;
}

double masking_proximity(const CodeSpace& code, int k, int pair_samples,
                         const RngSpec& rng) {
  if (pair_samples < 1) throw InputError("pair_samples must be >= 1");
  const QuditLayout& layout = code.layout();
  if (k < 1 || k > layout.n()) throw InputError("k out of range");
  if (code.k_dim() == 1) return 0.0;

  std::vector<Vector> logical;
  Rng gen(rng);
  for (int i = 0; i < 2 * pair_samples; ++i) logical.push_back(random_logical(code.k_dim(), gen));

  double worst = 0.0;
  for (const SubsetMask& s : subsets_of_size(layout.n(), k)) {
    LogicalPurity f(code, s);
    for (int i = 0; i < pair_samples; ++i) {
      const Matrix m1 = f.marginal_factor(logical[static_cast<std::size_t>(2 * i)]);
      const Matrix m2 = f.marginal_factor(logical[static_cast<std::size_t>(2 * i + 1)]);
      // ||rho1 - rho2||^2 = Tr rho1^2 + Tr rho2^2 - 2 |M1^dagger M2|_F^2
      const double cross = (m1.adjoint() * m2).squaredNorm();
      const double dist2 =
          Bipartition::purity(m1) + Bipartition::purity(m2) - 2.0 * cross;
      worst = std::max(worst, std::sqrt(std::max(0.0, dist2)));
    }
  }
  return worst;
}

namespace {

void check_code_bound_params(int n, int d, int k_dim, int delta) {
  if (n < 1 || d < 2) throw InputError("need n >= 1 and d >= 2");
  if (k_dim < 1) throw InputError("K must be >= 1");
  if (delta < 1 || delta - 1 > n) throw InputError("need 1 <= delta <= n + 1");
}

double code_purity_gap(int n, int d, int delta) {
  return haar_purity_gap(n, d, delta - 1);
}

void require_net_gap(double effective, double gap) {
  if (effective < 2.0 * gap) {
    throw ConstraintViolation("eps^2 - 2 eps' >= 2*Delta violated: eps^2 - 2 eps' = " +
                              std::to_string(effective) + " < 2*Delta = " +
                              std::to_string(2.0 * gap));
  }
}

}  // namespace

BoundValue random_subspace_success_bound(int n, int d, int k_dim, int delta,
                                         double epsilon, double eps_prime) {
  check_code_bound_params(n, d, k_dim, delta);
  const double net = net_cardinality(eps_prime, k_dim);
  const double gap = code_purity_gap(n, d, delta);
  const double effective = epsilon * epsilon - 2.0 * eps_prime;
  require_net_gap(effective, gap);
  const double mu = effective - gap;
  const double value = 1.0 - net * binomial(n, delta - 1) * haar_tail(n, d, mu);
  return {value, value <= 0.0};
}

BoundValue circuit_code_failure_bound(int n, int d, int k_dim, int delta, double epsilon,
                                      int t, double eps_prime_design, double eps_prime_net) {
  check_code_bound_params(n, d, k_dim, delta);
  if (delta < 2) throw InputError("need delta >= 2");
  const double net = net_cardinality(eps_prime_net, k_dim);
  const double gap = code_purity_gap(n, d, delta);
  const double effective = epsilon * epsilon - 2.0 * eps_prime_net;
  require_net_gap(effective, gap);
  const double per_subset = design_deviation_bound_per_subset(
      n, d, delta - 1, std::sqrt(effective), t, eps_prime_design);
  const double value = net * binomial(n, delta - 1) * per_subset;
  return {value, value >= 1.0};
}

}  // namespace kuniform
