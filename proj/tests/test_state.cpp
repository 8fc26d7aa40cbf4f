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
#include <limits>

#include <gtest/gtest.h>

#include "kuniform/ensembles.hpp"
#include "kuniform/fixtures.hpp"
#include "kuniform/layout.hpp"
#include "kuniform/state.hpp"
#include "test_support.hpp"

namespace kuniform {
namespace {

TEST(Layout, DigitsPutPartyOneFirst) {
  QuditLayout layout(3, 3);
  EXPECT_EQ(layout.dim(), 27u);
  // 5 = 0*9 + 1*3 + 2
  EXPECT_EQ(layout.digit(5, 1), 0);
  EXPECT_EQ(layout.digit(5, 2), 1);
  EXPECT_EQ(layout.digit(5, 3), 2);
}

TEST(Layout, RejectsOverflowAndBadArguments) {
  EXPECT_THROW(QuditLayout(0, 2), InputError);
  EXPECT_THROW(QuditLayout(3, 1), InputError);
  EXPECT_THROW(QuditLayout(40, 2), InputError);
  EXPECT_THROW(QuditLayout(20, 3), InputError);
}

TEST(SubsetMask, BasicOperations) {
  SubsetMask s{1, 3};
  EXPECT_EQ(s.size(), 2);
  EXPECT_TRUE(s.contains(3));
  EXPECT_FALSE(s.contains(2));
  EXPECT_EQ(s.complement(4), (SubsetMask{2, 4}));
  EXPECT_EQ(s.to_string(), "{1,3}");
  EXPECT_THROW(SubsetMask::from_indices({1, 1}), InputError);
  EXPECT_THROW(SubsetMask::from_indices({0}), InputError);
  EXPECT_THROW((SubsetMask{5}).validate(4), InputError);
}

TEST(SubsetMask, SubsetsOfSizeAreLexicographic) {
  const auto subsets = subsets_of_size(4, 2);
  ASSERT_EQ(subsets.size(), 6u);
  EXPECT_EQ(subsets.front(), (SubsetMask{1, 2}));
  EXPECT_EQ(subsets[1], (SubsetMask{1, 3}));
  EXPECT_EQ(subsets.back(), (SubsetMask{3, 4}));
  for (std::size_t i = 1; i < subsets.size(); ++i) EXPECT_TRUE(subsets[i - 1] < subsets[i]);
  EXPECT_EQ(all_subsets(3).size(), 8u);
  EXPECT_DOUBLE_EQ(binomial(7, 3), 35.0);
}

TEST(PureState, ValidatesNormAndLength) {
  QuditLayout layout(2, 2);
  EXPECT_THROW(PureState(layout, Vector::Ones(3)), InputError);
  EXPECT_THROW(PureState(layout, Vector::Ones(4)), InputError);
  EXPECT_NO_THROW(PureState::normalized(layout, Vector::Ones(4)));
  EXPECT_THROW(PureState::normalized(layout, Vector::Zero(4)), InputError);
}

TEST(DensityMatrix, ValidatesInvariants) {
  Matrix m = Matrix::Identity(2, 2) * 0.5;
  EXPECT_NO_THROW(DensityMatrix{m});
  Matrix bad = m;
  bad(0, 1) = 0.3;
  EXPECT_THROW(DensityMatrix{bad}, InputError);
  Matrix negative(2, 2);
  negative << 1.5, 0, 0, -0.5;
  EXPECT_THROW(DensityMatrix{negative}, InputError);
}

TEST(PartialTrace, BellMarginalIsMaximallyMixed) {
  const DensityMatrix rho = partial_trace(bell_state(), SubsetMask{1});
  EXPECT_LT((rho.entries() - Matrix::Identity(2, 2) * 0.5).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(PartialTrace, ProductStateMarginal) {
  const DensityMatrix rho = partial_trace(zero_state(2), SubsetMask{1});
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = 1.0;
  EXPECT_LT((rho.entries() - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(PartialTrace, GhzTwoPartyMarginal) {
  const DensityMatrix rho = partial_trace(ghz_state(3), SubsetMask{1, 2});
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = 0.5;
  expected(3, 3) = 0.5;
  EXPECT_LT((rho.entries() - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(PartialTrace, FullAndEmptyKeep) {
  const PureState psi = haar_state(QuditLayout(3, 2), {3, 0});
  const DensityMatrix full = partial_trace(psi, SubsetMask::all(3));
  const Matrix outer = psi.amplitudes() * psi.amplitudes().adjoint();
  EXPECT_LT((full.entries() - outer).cwiseAbs().maxCoeff(), 1e-12);
  const DensityMatrix none = partial_trace(psi, SubsetMask{});
  ASSERT_EQ(none.dim(), 1u);
  EXPECT_NEAR(none.entries()(0, 0).real(), 1.0, 1e-12);
}

TEST(PartialTrace, MatchesBruteForceOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int d = seed % 2 ? 3 : 2;
    const int n = d == 2 ? 4 : 3;
    const PureState psi = haar_state(QuditLayout(n, d), {seed, 1});
    const SubsetMask keep = testing::random_subset(n, seed);
    const Matrix expected = testing::brute_force_marginal(psi, keep);
    const DensityMatrix rho = partial_trace(psi, keep);
    EXPECT_LT((rho.entries() - expected).cwiseAbs().maxCoeff(), 1e-12) << keep.to_string();
  }
}

TEST(Purity, KnownValues) {
  EXPECT_NEAR(subsystem_purity(ghz_state(3), SubsetMask{1}), 0.5, 1e-12);
  EXPECT_NEAR(subsystem_purity(zero_state(4), SubsetMask{1, 2}), 1.0, 1e-12);
}

TEST(Purity, MarginalSymmetryAndRange) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 2 + static_cast<int>(seed % 4);
    QuditLayout layout(n, 2);
    const PureState psi = haar_state(layout, {seed, 2});
    for (const SubsetMask& s : all_subsets(n)) {
      if (s.empty() || s.size() == n) continue;
      const double p = subsystem_purity(psi, s);
      EXPECT_NEAR(p, subsystem_purity(psi, s.complement(n)), 1e-9);
      const double floor_dim =
          static_cast<double>(std::min(layout.dim_of(s.size()), layout.dim_of(n - s.size())));
      EXPECT_GE(p, 1.0 / floor_dim - 1e-12);
      EXPECT_LE(p, 1.0 + 1e-12);
    }
  }
}

TEST(Uniformity, ProductStateIsFarFromUniform) {
  const UniformityReport r = uniformity_epsilon(zero_state(4), 2);
  EXPECT_NEAR(r.epsilon, std::sqrt(3.0) / 2.0, 1e-12);
  EXPECT_EQ(r.subset_purities.size(), 6u);
  EXPECT_EQ(r.argmax_subsets.size(), 6u);
}

TEST(Uniformity, GhzLevels) {
  EXPECT_NEAR(uniformity_epsilon(ghz_state(3), 1).epsilon, 0.0, 1e-12);
  EXPECT_NEAR(uniformity_epsilon(ghz_state(3), 2).epsilon, 0.5, 1e-12);
}

TEST(Uniformity, RejectsBadK) {
  EXPECT_THROW(uniformity_epsilon(ghz_state(3), 0), InputError);
  EXPECT_THROW(uniformity_epsilon(ghz_state(3), 4), InputError);
}

TEST(Uniformity, EpsilonSquaredIsMaxDeviation) {
  const PureState psi = haar_state(QuditLayout(5, 2), {11, 0});
  const UniformityReport r = uniformity_epsilon(psi, 2);
  double worst = 0.0;
  for (const auto& sp : r.subset_purities) worst = std::max(worst, sp.purity - 0.25);
  EXPECT_NEAR(r.epsilon * r.epsilon, worst, 1e-12);
  EXPECT_NEAR(max_purity_deviation(psi, 2), worst, 1e-12);
  ASSERT_FALSE(r.argmax_subsets.empty());
}

TEST(HsDistance, KnownValues) {
  EXPECT_NEAR(hs_distance_to_mixed(bell_state(), SubsetMask{1}), 0.0, 1e-12);
  EXPECT_NEAR(hs_distance_to_mixed(zero_state(2), SubsetMask{1}), std::sqrt(0.5), 1e-12);
}

TEST(HsDistance, EigenvalueFormAgrees) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    QuditLayout layout(4, 2);
    const PureState psi = haar_state(layout, {seed, 3});
    const SubsetMask s = testing::random_subset(4, seed + 100);
    const DensityMatrix rho = partial_trace(psi, s);
    const double ds = static_cast<double>(rho.dim());
    const RealVector ev = rho.eigenvalues();
    double sum = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      const double e = ds * ev(i) - 1.0;
      sum += e * e;
    }
    EXPECT_NEAR(std::sqrt(sum), ds * hs_distance_to_mixed(psi, s), 1e-8);
  }
}

TEST(Demotion, Formula) {
  EXPECT_DOUBLE_EQ(demoted_epsilon(0.1, 2, 1), 0.2);
  EXPECT_DOUBLE_EQ(demoted_epsilon(0.1, 2, 0), 0.1);
  EXPECT_NEAR(demoted_epsilon(0.01, 3, 2), 0.09, 1e-15);
}

TEST(Measurements, KnownValues) {
  EXPECT_DOUBLE_EQ(measurement_bound(4.0, 0.1), 50.0);
  const MeasurementEstimate bell = required_measurements(bell_state(), SubsetMask{1});
  EXPECT_TRUE(std::isinf(bell.exact));
  EXPECT_TRUE(std::isinf(bell.bound));
  const MeasurementEstimate zero = required_measurements(zero_state(2), SubsetMask{1});
  EXPECT_NEAR(zero.exact, 1.0 / std::log(2.0), 1e-12);
  EXPECT_NEAR(zero.bound, 2.0 / (2.0 * 0.5), 1e-12);
}

TEST(Entropy, MixedQubit) {
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix(Matrix::Identity(2, 2) * 0.5)), std::log(2.0),
              1e-12);
}

}  // namespace
}  // namespace kuniform
