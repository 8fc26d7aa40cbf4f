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

#include "kuniform/ensembles.hpp"
#include "kuniform/fixtures.hpp"
#include "kuniform/optimizer.hpp"
#include "test_support.hpp"

namespace kuniform {
namespace {

OptimizerConfig quick_config(int restarts) {
  OptimizerConfig c;
  c.restarts = restarts;
  return c;
}

// df/dx_j + i df/dy_j by central differences; the Wirtinger derivative
// d/d(conj c_j) is half of it.
Vector finite_difference_gradient(const PureState& psi, const SubsetMask& s, double h) {
  const QuditLayout& layout = psi.layout();
  const Vector& base = psi.amplitudes();
  auto f = [&](const Vector& v) {
    // Purity of the unnormalized vector, matching the unconstrained gradient.
    const Bipartition bp(layout, s);
    return Bipartition::purity(bp.reshape(v));
  };
  Vector g(base.size());
  for (Eigen::Index j = 0; j < base.size(); ++j) {
    Vector p = base, m = base;
    p(j) += h;
    m(j) -= h;
    const double dx = (f(p) - f(m)) / (2 * h);
    p = base;
    m = base;
    p(j) += Complex(0, h);
    m(j) -= Complex(0, h);
    const double dy = (f(p) - f(m)) / (2 * h);
    g(j) = Complex(dx, dy);
  }
  return g;
}

TEST(PurityGradient, ClosedForms) {
  const Vector g0 = purity_gradient(zero_state(2), SubsetMask{1});
  Vector expected = Vector::Zero(4);
  expected(0) = 2.0;
  EXPECT_LT((g0 - expected).cwiseAbs().maxCoeff(), 1e-12);
  const PureState bell = bell_state();
  EXPECT_LT((purity_gradient(bell, SubsetMask{1}) - bell.amplitudes()).cwiseAbs().maxCoeff(),
            1e-12);
}

TEST(PurityGradient, MatchesFiniteDifferences) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    QuditLayout layout(3, 2);
    const PureState psi = haar_state(layout, {seed, 40});
    const SubsetMask s = testing::random_subset(3, seed + 3);
    const Vector fd = 0.5 * finite_difference_gradient(psi, s, 1e-5);
    const Vector g = purity_gradient(psi, s);
    EXPECT_LE((fd - g).norm() / g.norm(), 1e-5);
  }
}

TEST(Objective, EqualTermsAddLogCount) {
  const double t = 0.01;
  const double dev = 0.0;
  EXPECT_NEAR(epsilon_objective(bell_state(), 1, t), dev + t * std::log(2.0), 1e-12);
}

TEST(Objective, UpperBoundsHardMax) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PureState psi = haar_state(QuditLayout(5, 2), {seed, 41});
    const double hard = max_purity_deviation(psi, 2);
    for (double t : {1e-1, 1e-2, 1e-4}) {
      const double v = epsilon_objective(psi, 2, t);
      EXPECT_GE(v, hard - 1e-15);
      EXPECT_LE(v, hard + t * std::log(binomial(5, 2)) + 1e-15);
    }
  }
  const double zero = epsilon_objective(zero_state(4), 2, 1e-6);
  EXPECT_NEAR(zero, 0.75, 1e-6 * std::log(6.0) + 1e-12);
}

TEST(Config, Validation) {
  OptimizerConfig c;
  EXPECT_NO_THROW(c.validate());
  c.restarts = 0;
  EXPECT_THROW(c.validate(), InputError);
  c = OptimizerConfig{};
  c.lse_temperature_schedule = {1e-2, 1e-1};
  EXPECT_THROW(c.validate(), InputError);
  c.lse_temperature_schedule = {0.0};
  EXPECT_THROW(c.validate(), InputError);
  const auto sched = OptimizerConfig::geometric_schedule(1e-1, 1e-4, 4);
  ASSERT_EQ(sched.size(), 4u);
  EXPECT_NEAR(sched[1], 1e-2, 1e-15);
}

TEST(Minimize, ResultInvariants) {
  const OptimizationResult r = minimize_epsilon(QuditLayout(4, 2), 2, quick_config(5), {7, 0});
  EXPECT_NEAR(r.best_state.amplitudes().norm(), 1.0, 1e-10);
  EXPECT_NEAR(uniformity_epsilon(r.best_state, 2).epsilon, r.epsilon_star, 1e-10);
  for (std::size_t i = 1; i < r.best_history.size(); ++i) {
    EXPECT_LE(r.best_history[i], r.best_history[i - 1]);
  }
  EXPECT_LE(r.epsilon_star, 0.289);
  EXPECT_GE(r.epsilon_star, 1.0 / (2.0 * std::sqrt(19.0)) - 1e-6);
}

TEST(Minimize, ThreeQubitOneUniform) {
  const OptimizationResult r = minimize_epsilon(QuditLayout(3, 2), 1, quick_config(5), {7, 0});
  EXPECT_LE(r.epsilon_star, 1e-6);
}

TEST(Minimize, LocalUnitaryInvariance) {
  const OptimizationResult r = minimize_epsilon(QuditLayout(4, 2), 2, quick_config(3), {8, 0});
  QuditLayout layout(4, 2);
  Matrix u = haar_unitary(2, {9, 0});
  // Embed a single-site unitary on party 2 as a two-qudit gate u (x) I.
  Matrix gate = Matrix::Zero(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) gate(a * 2 + c, b * 2 + c) = u(a, b);
  const PureState rotated = apply_two_qudit_gate(r.best_state, {2, 3}, gate);
  EXPECT_NEAR(uniformity_epsilon(rotated, 2).epsilon, r.epsilon_star, 1e-9);
}

TEST(Minimize, FullSubsetIsNotOptimized) {
  const OptimizationResult r = minimize_epsilon(QuditLayout(3, 2), 3, quick_config(2), {1, 0});
  EXPECT_EQ(r.iterations_used, 0);
  EXPECT_NEAR(r.epsilon_star, std::sqrt(1.0 - 1.0 / 8.0), 1e-12);
}

TEST(Minimize, RejectsOversizedAndBadK) {
  EXPECT_THROW(minimize_epsilon(QuditLayout(15, 2), 2, quick_config(1), {1, 0}), InputError);
  EXPECT_THROW(minimize_epsilon(QuditLayout(4, 2), 0, quick_config(1), {1, 0}), InputError);
}

TEST(Table, ReferenceLookup) {
  ASSERT_TRUE(find_reference(4, 2, 2).has_value());
  EXPECT_NEAR(find_reference(4, 2, 2)->epsilon, 0.2887, 1e-12);
  EXPECT_NEAR(find_reference(5, 2, 2)->epsilon, 3.501e-7, 1e-15);
  EXPECT_NEAR(find_reference(5, 2, 1)->epsilon, 3.371e-5, 1e-15);
  EXPECT_FALSE(find_reference(9, 2, 2).has_value());
  EXPECT_THROW(certify_table_row(9, 2, 2, quick_config(1), {1, 0}), InputError);
}

TEST(Table, CertifiesAnExistingAmeRow) {
  const TableRowResult r = certify_table_row(4, 3, 2, quick_config(3), {2, 0});
  EXPECT_TRUE(r.within_tolerance);
  EXPECT_LE(r.result.epsilon_star, 1e-4);
}

}  // namespace
}  // namespace kuniform
