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
#include "kuniform/enumerators.hpp"
#include "kuniform/fixtures.hpp"

namespace kuniform {
namespace {

Matrix outer(const PureState& s) { return s.amplitudes() * s.amplitudes().adjoint(); }

Matrix random_hermitian(Eigen::Index dim, std::uint64_t seed) {
  Rng gen({seed, 77});
  Matrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = gen.complex_normal();
  }
  return (m + m.adjoint()) * 0.5;
}

TEST(HWLabel, WeightAndSupport) {
  HWLabel l(3, {{0, 0}, {1, 2}, {0, 1}});
  EXPECT_EQ(l.weight(), 2);
  EXPECT_EQ(l.support(), (SubsetMask{2, 3}));
  EXPECT_THROW(HWLabel(2, {{2, 0}}), InputError);
}

TEST(HWOperator, SingleSite) {
  EXPECT_LT((hw_operator(HWLabel(2, {{0, 0}})) - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(),
            1e-15);
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  EXPECT_LT((hw_operator(HWLabel(2, {{1, 0}})) - x).cwiseAbs().maxCoeff(), 1e-15);
  const Matrix xz = hw_operator(HWLabel(3, {{1, 1}}));
  EXPECT_NEAR((xz.adjoint() * xz).trace().real(), 3.0, 1e-12);
}

TEST(HWOperator, BasisIsOrthogonal) {
  const int d = 3;
  std::vector<Matrix> basis;
  for (std::size_t i = 0; i < 9; ++i) basis.push_back(hw_operator(HWLabel::from_index(1, d, i)));
  for (std::size_t i = 0; i < 9; ++i) {
    for (std::size_t j = 0; j < 9; ++j) {
      const Complex t = (basis[i].adjoint() * basis[j]).trace();
      EXPECT_NEAR(std::abs(t - Complex(i == j ? d : 0.0)), 0.0, 1e-10);
    }
  }
}

TEST(ShorLaflamme, MaximallyMixedQubit) {
  const Matrix m = Matrix::Identity(2, 2) * 0.5;
  const ShorLaflamme sl = shor_laflamme(m, m, QuditLayout(1, 2));
  EXPECT_NEAR(sl.A[0], 1.0, 1e-12);
  EXPECT_NEAR(sl.A[1], 0.0, 1e-12);
  EXPECT_NEAR(sl.B[0], 0.5, 1e-12);
  EXPECT_NEAR(sl.B[1], 1.5, 1e-12);
}

TEST(ShorLaflamme, PureStateAndGhz) {
  const Matrix rho = outer(ghz_state(3));
  const ShorLaflamme sl = shor_laflamme(rho, rho, QuditLayout(3, 2));
  EXPECT_NEAR(sl.A[0], 1.0, 1e-12);
  EXPECT_NEAR(sl.B[0], 1.0, 1e-12);
  EXPECT_NEAR(sl.A[1], 0.0, 1e-12);
}

TEST(ShorLaflamme, RejectsOversizedLayoutAndMismatch) {
  EXPECT_FALSE(shor_laflamme_feasible(QuditLayout(13, 2)));
  EXPECT_TRUE(shor_laflamme_feasible(QuditLayout(12, 2)));
  const Matrix m = Matrix::Identity(4, 4);
  EXPECT_THROW(shor_laflamme(m, Matrix::Identity(2, 2), QuditLayout(2, 2)), InputError);
}

TEST(Rains, PureStateEnds) {
  const PureState psi = haar_state(QuditLayout(3, 2), {5, 0});
  const RainsUnitary r = rains_unitary(outer(psi), outer(psi), QuditLayout(3, 2));
  EXPECT_NEAR(r.Aprime[0], 1.0, 1e-12);
  EXPECT_NEAR(r.Aprime[3], 1.0, 1e-12);
  for (int j = 0; j <= 3; ++j) EXPECT_NEAR(r.Bprime[j], r.Aprime[3 - j], 1e-9);
}

TEST(Rains, Bell) {
  const Matrix rho = outer(bell_state());
  const RainsUnitary r = rains_unitary(rho, rho, QuditLayout(2, 2));
  EXPECT_NEAR(r.Aprime[0], 1.0, 1e-12);
  EXPECT_NEAR(r.Aprime[1], 1.0, 1e-12);
  EXPECT_NEAR(r.Aprime[2], 1.0, 1e-12);
}

TEST(Rains, PerSubsetMatchesPurities) {
  const PureState psi = haar_state(QuditLayout(4, 2), {8, 0});
  const auto per = rains_per_subset(outer(psi), outer(psi), QuditLayout(4, 2));
  for (const SubsetMask& s : all_subsets(4)) {
    if (s.empty()) continue;
    EXPECT_NEAR(per[s.bits()], subsystem_purity(psi, s), 1e-10);
  }
}

// d^j A'_j = sum_i C(n-i, j-i) A_i, and the same with B'.
TEST(Rains, MacWilliamsRelationOnHermitianPairs) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const int d = seed % 2 ? 3 : 2;
    const int n = d == 2 ? 3 : 2;
    QuditLayout layout(n, d);
    const auto dim = static_cast<Eigen::Index>(layout.dim());
    const Matrix m1 = random_hermitian(dim, seed);
    const Matrix m2 = random_hermitian(dim, seed + 50);
    const ShorLaflamme sl = shor_laflamme(m1, m2, layout);
    const RainsUnitary r = rains_unitary(m1, m2, layout);
    for (int j = 0; j <= n; ++j) {
      double a = 0.0, b = 0.0;
      for (int i = 0; i <= j; ++i) {
        a += binomial(n - i, j - i) * sl.A[i];
        b += binomial(n - i, j - i) * sl.B[i];
      }
      const double dj = std::pow(d, j);
      EXPECT_NEAR(dj * r.Aprime[j], a, 1e-8 * std::max(1.0, std::abs(a)));
      EXPECT_NEAR(dj * r.Bprime[j], b, 1e-8 * std::max(1.0, std::abs(b)));
    }
  }
}

TEST(Shadow, BellAllSubsets) {
  EXPECT_NEAR(shadow_enumerator(bell_state(), SubsetMask{1, 2}), 1.0, 1e-12);
  EXPECT_NEAR(shadow_enumerator(bell_state(), SubsetMask{}), 3.0, 1e-12);
}

TEST(Shadow, DensityRouteMatchesPureRoute) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    QuditLayout layout(3, 2);
    const PureState psi = haar_state(layout, {seed, 9});
    const DensityMatrix rho(outer(psi));
    for (const SubsetMask& t : all_subsets(3)) {
      EXPECT_NEAR(shadow_enumerator(rho, layout, t), shadow_enumerator(psi, t), 1e-10);
    }
  }
}

// Independent route: s_T from the Shor-Laflamme expansion of each marginal
// purity, Tr rho_S^2 = d^{-|S|} sum over labels supported in S of |Tr E rho|^2.
TEST(Shadow, ShorLaflammeRouteAgrees) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const int n = 3;
    const int d = 2;
    QuditLayout layout(n, d);
    const PureState psi = haar_state(layout, {seed, 10});
    const Matrix rho = outer(psi);
    const std::size_t labels = std::size_t{1} << (2 * n);
    std::vector<double> weight_sum(std::size_t{1} << n, 0.0);
    for (std::size_t idx = 0; idx < labels; ++idx) {
      const HWLabel l = HWLabel::from_index(n, d, idx);
      const double c = std::norm((hw_operator(l) * rho).trace());
      for (const SubsetMask& s : all_subsets(n)) {
        if ((l.support().bits() & ~s.bits()) == 0) weight_sum[s.bits()] += c;
      }
    }
    for (const SubsetMask& t : all_subsets(n)) {
      double s_t = 0.0;
      for (const SubsetMask& s : all_subsets(n)) {
        const double purity = weight_sum[s.bits()] / std::pow(d, s.size());
        s_t += (s.intersect(t).size() % 2 ? -1.0 : 1.0) * purity;
      }
      EXPECT_NEAR(s_t, shadow_enumerator(psi, t), 1e-8);
    }
  }
}

TEST(Shadow, PositivityOnRandomStates) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int d = seed % 3 == 0 ? 3 : 2;
    const int n = d == 2 ? 2 + static_cast<int>(seed % 4) : 3;
    const PureState psi = haar_state(QuditLayout(n, d), {seed, 11});
    for (double s : shadow_all(psi)) EXPECT_GE(s, -1e-9);
  }
}

TEST(FCoefficient, KnownValues) {
  EXPECT_DOUBLE_EQ(f_coefficient(2, 4, 4), 38.0);
  EXPECT_DOUBLE_EQ(f_coefficient(2, 2, 2), 8.0);
  EXPECT_THROW(f_coefficient(2, 4, 5), InputError);
}

TEST(Nonexistence, BoundValues) {
  EXPECT_NEAR(nonexistence_epsilon_bound(2, 4, 4, -0.5), 1.0 / (2.0 * std::sqrt(19.0)), 1e-12);
  EXPECT_NEAR(nonexistence_epsilon_bound(2, 4, 4, -0.25), std::sqrt(0.25 / 38.0), 1e-12);
  EXPECT_THROW(nonexistence_epsilon_bound(2, 4, 4, 0.0), ConstraintViolation);
}

TEST(Nonexistence, HypotheticalProfiles) {
  EXPECT_DOUBLE_EQ(hypothetical_ame_shadow(2, 4, SubsetMask::all(4)), -0.5);
  EXPECT_NEAR(hypothetical_ame_shadow(2, 2, SubsetMask::all(2)), 1.0, 1e-12);
  EXPECT_GE(hypothetical_ame_shadow(2, 6, SubsetMask::all(6)), 0.0);
}

TEST(PureDistance, Fixtures) {
  const PureDistanceCertificate bell =
      pure_distance_certificate(outer(bell_state()), 1, 2, QuditLayout(2, 2));
  EXPECT_NEAR(bell.gap, 0.0, 1e-10);
  EXPECT_TRUE(bell.is_pure);

  const CodeSpace five = five_qubit_code();
  const PureDistanceCertificate c = pure_distance_certificate(five.projector(), 2, 3, five.layout());
  EXPECT_NEAR(c.gap, 0.0, 1e-8);
  EXPECT_NEAR(c.aprime, 2.5, 1e-8);
  EXPECT_TRUE(c.is_pure);

  const PureDistanceCertificate zero =
      pure_distance_certificate(outer(zero_state(4)), 1, 2, QuditLayout(4, 2));
  EXPECT_NEAR(zero.gap, 0.0, 1e-10);
  EXPECT_FALSE(zero.is_pure);
}

TEST(PureDistance, RejectsNonProjector) {
  EXPECT_THROW(pure_distance_certificate(Matrix::Identity(4, 4) * 0.7, 1, 2, QuditLayout(2, 2)),
               InputError);
}

}  // namespace
}  // namespace kuniform
