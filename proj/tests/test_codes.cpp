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

#include <cmath>

#include <gtest/gtest.h>

#include "kuniform/codes.hpp"
#include "kuniform/ensembles.hpp"
#include "kuniform/enumerators.hpp"
#include "kuniform/fixtures.hpp"

namespace kuniform {
namespace {

OptimizerConfig inner_config() {
  OptimizerConfig c;
  c.restarts = 6;
  c.max_iters = 2000;
  return c;
}

TEST(CodeSpace, Validation) {
  QuditLayout layout(2, 2);
  EXPECT_THROW(CodeSpace(layout, Matrix::Ones(4, 2)), InputError);
  EXPECT_THROW(CodeSpace(layout, Matrix::Identity(3, 1)), InputError);
  const CodeSpace c(layout, Matrix::Identity(4, 2));
  const Matrix p = c.projector();
  EXPECT_LT((p * p - p).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(RandomCode, OrthonormalOverSeeds) {
  QuditLayout layout(3, 2);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const CodeSpace c = random_code(layout, 3, {s, 0});
    EXPECT_LT((c.isometry().adjoint() * c.isometry() - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff(),
              1e-10);
  }
  const CodeSpace full = random_code(QuditLayout(2, 2), 4, {1, 0});
  EXPECT_LT((full.isometry() * full.isometry().adjoint() - Matrix::Identity(4, 4))
                .cwiseAbs().maxCoeff(),
            1e-10);
  EXPECT_THROW(random_code(QuditLayout(2, 2), 5, {1, 0}), InputError);
  EXPECT_THROW(random_code(QuditLayout(2, 2), 0, {1, 0}), InputError);
}

TEST(FiveQubit, StabilizersFixCodewords) {
  const CodeSpace code = five_qubit_code();
  ASSERT_EQ(code.k_dim(), 2);
  for (const auto& g : five_qubit_generators()) {
    const Matrix s = pauli_string(g);
    EXPECT_LT((s * code.isometry() - code.isometry()).cwiseAbs().maxCoeff(), 1e-10) << g;
  }
  const Matrix p = stabilizer_projector(five_qubit_generators());
  EXPECT_NEAR(p.trace().real(), 2.0, 1e-10);
  EXPECT_LT((p - code.projector()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(FiveQubit, EveryCodewordIsTwoUniformOnAGrid) {
  const CodeSpace code = five_qubit_code();
  for (int i = 0; i < 12; ++i) {
    for (int j = 0; j < 12; ++j) {
      Vector c(2);
      const double theta = M_PI * (i + 0.5) / 12;
      c << std::cos(theta / 2), std::polar(std::sin(theta / 2), 2 * M_PI * j / 12);
      EXPECT_LE(uniformity_epsilon(code.encode(c), 2).epsilon, 1e-7);
    }
  }
}

TEST(CodeEpsilon, SingleCodewordReducesToStateEpsilon) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const PureState psi = haar_state(QuditLayout(4, 2), {s, 50});
    const CodeCertificate cert = code_epsilon(single_state_code(psi), 3, inner_config(), {s, 0});
    EXPECT_NEAR(cert.epsilon_lower, uniformity_epsilon(psi, 2).epsilon, 1e-10);
  }
}

TEST(CodeEpsilon, FiveQubitIsExact) {
  const CodeCertificate cert = code_epsilon(five_qubit_code(), 3, inner_config(), {1, 0});
  EXPECT_LE(cert.epsilon_lower, 1e-6);
}

TEST(CodeEpsilon, CertificateReproduces) {
  const CodeSpace code = random_code(QuditLayout(4, 2), 2, {3, 0});
  for (auto method : {CertificationMethod::kOptimized, CertificationMethod::kSampled}) {
    const CodeCertificate cert = code_epsilon(code, 2, inner_config(), {3, 1}, method);
    EXPECT_GT(cert.epsilon_lower, 0.0);
    const double again = uniformity_epsilon(code.encode(cert.worst_logical), 1).epsilon;
    EXPECT_NEAR(cert.epsilon_lower, again, 1e-9);
  }
}

TEST(CodeEpsilon, OptimizedBeatsSampled) {
  const CodeSpace code = random_code(QuditLayout(4, 2), 3, {4, 0});
  const double opt = code_epsilon(code, 2, inner_config(), {4, 1}).epsilon_lower;
  const double smp =
      code_epsilon(code, 2, inner_config(), {4, 1}, CertificationMethod::kSampled).epsilon_lower;
  EXPECT_GE(opt, smp - 1e-9);
}

TEST(CodeEpsilon, RejectsDelta) {
  const CodeSpace code = five_qubit_code();
  EXPECT_THROW(code_epsilon(code, 1, inner_config(), {1, 0}), InputError);
  EXPECT_THROW(code_epsilon(code, 7, inner_config(), {1, 0}), InputError);
}

TEST(NetCardinality, Values) {
  EXPECT_DOUBLE_EQ(net_cardinality(0.5, 1), 100.0);
  EXPECT_NEAR(net_cardinality(0.05, 2), 1e8, 1e-4);
  EXPECT_NEAR(net_cardinality(0.99, 1), std::pow(5.0 / 0.99, 2), 1e-12);
  EXPECT_THROW(net_cardinality(1.0, 1), InputError);
  EXPECT_THROW(net_cardinality(0.0, 1), InputError);
}

TEST(EnumeratorGap, PureCodesAreZero) {
  const PureState psi = haar_state(QuditLayout(4, 2), {6, 0});
  const CodeSpace single = single_state_code(psi);
  for (const SubsetMask& s : all_subsets(4)) {
    EXPECT_NEAR(code_enumerator_gap(single, s), 0.0, 1e-9);
  }
  const CodeSpace five = five_qubit_code();
  for (int i = 0; i <= 2; ++i) {
    for (const SubsetMask& s : subsets_of_size(5, i)) {
      EXPECT_NEAR(code_enumerator_gap(five, s), 0.0, 1e-8);
    }
  }
}

TEST(EnumeratorGap, NonNegativeForRandomCodes) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const CodeSpace code = random_code(QuditLayout(4, 2), 1 + seed % 4, {seed, 60});
    for (const SubsetMask& s : all_subsets(4)) EXPECT_GE(code_enumerator_gap(code, s), -1e-9);
  }
}

TEST(EnumeratorGap, AverageFormula) {
  EXPECT_NEAR(random_code_average_gap(4, 2, 2, 1), 0.5 * 1.5 / (16.0 - 1.0 / 16.0), 1e-15);
}

TEST(EnumeratorChecks, FiveQubitExact) {
  const CodeSpace five = five_qubit_code();
  EXPECT_TRUE(gap_bound_check(five, 3, 0.0));
  EXPECT_TRUE(enumerator_bounds_check(five, 3, 0.0));
}

TEST(EnumeratorChecks, VacuousEpsilonPasses) {
  const CodeSpace code = random_code(QuditLayout(4, 2), 2, {7, 0});
  EXPECT_TRUE(gap_bound_check(code, 2, std::sqrt(1.0 - 0.5)));
}

TEST(EnumeratorChecks, FailOnABadCode) {
  // |00..0> spanned codes are far from uniform; epsilon = 0 must be rejected.
  Matrix v = Matrix::Zero(16, 2);
  v(0, 0) = 1.0;
  v(1, 1) = 1.0;
  const CodeSpace code(QuditLayout(4, 2), v);
  EXPECT_FALSE(gap_bound_check(code, 2, 0.0));
  EXPECT_FALSE(enumerator_bounds_check(code, 2, 0.0));
}

TEST(EnumeratorChecks, BellSingleCode) {
  const CodeSpace bell = single_state_code(bell_state());
  EXPECT_TRUE(enumerator_bounds_check(bell, 2, 0.0));
}

TEST(Masking, TrivialAndExactCodes) {
  EXPECT_EQ(masking_proximity(single_state_code(bell_state()), 1, 10, {1, 0}), 0.0);
  EXPECT_LE(masking_proximity(five_qubit_code(), 2, 50, {1, 0}), 1e-6);
  EXPECT_THROW(masking_proximity(five_qubit_code(), 2, 0, {1, 0}), InputError);
}

TEST(Masking, BoundedByTwiceCertifiedEpsilon) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const CodeSpace code = random_code(QuditLayout(4, 2), 2, {seed, 70});
    const double eps = code_epsilon(code, 2, inner_config(), {seed, 71}).epsilon_lower;
    EXPECT_LE(masking_proximity(code, 1, 100, {seed, 72}), 2.0 * eps + 1e-8);
  }
}

TEST(CodeBounds, SubspaceVacuousAtSmallN) {
  const BoundValue b = random_subspace_success_bound(4, 2, 2, 2, 0.9, 0.01);
  EXPECT_LT(b.value, 0.0);
  EXPECT_TRUE(b.vacuous);
  EXPECT_THROW(random_subspace_success_bound(4, 2, 2, 2, 0.1, 0.01), ConstraintViolation);
}

TEST(CodeBounds, SubspaceMatchesHaarShapeAtKOne) {
  const double eps_prime = 0.01;
  const double eps = std::sqrt(0.7 * 0.7 + 2 * eps_prime);
  const BoundValue sub = random_subspace_success_bound(8, 2, 1, 3, eps, eps_prime);
  const BoundValue haar = haar_success_lower_bound(8, 2, 2, 0.7);
  const double net = net_cardinality(eps_prime, 1);
  EXPECT_NEAR(1.0 - sub.value, net * (1.0 - haar.value), 1e-9 * net);
}

TEST(CodeBounds, CircuitCodeStructure) {
  const int n = 10, d = 2, delta = 2;
  const double eps = 0.8, net_eps = 0.05;
  const BoundValue k1 = circuit_code_failure_bound(n, d, 1, delta, eps, 16, 0.0, net_eps);
  const BoundValue k2 = circuit_code_failure_bound(n, d, 2, delta, eps, 16, 0.0, net_eps);
  EXPECT_NEAR(k2.value / k1.value, std::pow(5.0 / net_eps, 2), 1e-6 * k2.value / k1.value);
  const double per = design_deviation_bound_per_subset(
      n, d, delta - 1, std::sqrt(eps * eps - 2 * net_eps), 16, 0.0);
  EXPECT_NEAR(k1.value, net_cardinality(net_eps, 1) * n * per, 1e-9 * k1.value);
  EXPECT_THROW(circuit_code_failure_bound(n, d, 1, delta, eps, 7, 0.0, net_eps),
               ConstraintViolation);
  const BoundValue tiny = circuit_code_failure_bound(n, d, 1, delta, eps, 16, 0.0, 1e-6);
  EXPECT_GT(tiny.value, k1.value);
}

}  // namespace
}  // namespace kuniform
