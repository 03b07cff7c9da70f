// Copyright 2026 The mipt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "mipt/spectral.hpp"
#include "mipt/statevec.hpp"

using namespace mipt;

namespace {

FloquetSpec random_spec(int L, double theta, uint64_t seed) {
  Rng rng(seed);
  FloquetSpec s{L, theta, {}, 0};
  for (int i = 0; i < L; ++i) s.h.push_back(rng.uniform(0.0, 2.0 * kPi));
  return s;
}

// Oracle: one period assembled column by column from library gates on a
// dense state, in the order odd bonds, fields, even bonds, fields.
Eigen::MatrixXcd floquet_from_gates(const FloquetSpec& s) {
  const size_t dim = size_t{1} << s.L;
  const Gate2Q g = fsim(s.theta, 2.0 * s.theta);
  Eigen::MatrixXcd u(dim, dim);
  auto fields = [&](StateVector& psi) {
    for (int i = 0; i < s.L; ++i) {
      Mat2 z = Mat2::Zero();
      z(0, 0) = std::exp(cplx(0.0, -s.h[i]));
      z(1, 1) = std::exp(cplx(0.0, s.h[i]));
      psi.apply_matrix(z, i);
    }
  };
  for (size_t col = 0; col < dim; ++col) {
    std::vector<cplx> a(dim, 0.0);
    a[col] = 1.0;
    StateVector psi = StateVector::from_amplitudes(a, Backend::Serial);
    for (int i = 1; i + 1 < s.L; i += 2) psi.apply_gate(g, i, i + 1);
    fields(psi);
    for (int i = 0; i + 1 < s.L; i += 2) psi.apply_gate(g, i, i + 1);
    fields(psi);
    for (size_t r = 0; r < dim; ++r) u(r, col) = psi.amps()[r];
  }
  return u;
}

}  // namespace

TEST(Floquet, SectorDimension) {
  EXPECT_EQ(charge_sector(8, 0).size(), 70u);
  EXPECT_EQ(charge_sector(10, 0).size(), 252u);
  EXPECT_EQ(charge_sector(6, 2).size(), 15u);
  EXPECT_EQ(floquet_unitary(random_spec(8, 0.3, 1)).rows(), 70);
}

TEST(Floquet, MatchesGateAssembly) {
  for (double theta : {0.1 * kPi, 0.4 * kPi, 1.1}) {
    const FloquetSpec s = random_spec(6, theta, 2);
    EXPECT_LT((floquet_unitary_full(s) - floquet_from_gates(s)).cwiseAbs().maxCoeff(), 1e-12) << theta;
  }
}

TEST(Floquet, ConservesCharge) {
  const FloquetSpec s = random_spec(6, 0.37 * kPi, 3);
  const Eigen::MatrixXcd u = floquet_unitary_full(s);
  Eigen::VectorXcd charge(64);
  for (int b = 0; b < 64; ++b) charge[b] = 6 - 2 * __builtin_popcount(b);
  const Eigen::MatrixXcd q = charge.asDiagonal();
  EXPECT_LT((u * q - q * u).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_TRUE(is_unitary(u, 1e-10));
}

TEST(Floquet, SectorIsBlockOfFullUnitary) {
  const FloquetSpec s = random_spec(6, 0.2 * kPi, 4);
  const Eigen::MatrixXcd full = floquet_unitary_full(s), sector = floquet_unitary(s);
  const auto basis = charge_sector(6, 0);
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = 0; j < basis.size(); ++j) EXPECT_NEAR(std::abs(sector(i, j) - full(basis[i], basis[j])), 0.0, 1e-14);
}

TEST(Floquet, ZeroAngleGivesFieldPhases) {
  const FloquetSpec s = random_spec(6, 0.0, 5);
  std::vector<double> expected;
  for (uint32_t b : charge_sector(6, 0)) {
    double e = 0.0;
    for (int i = 0; i < 6; ++i) e += ((b >> i) & 1u) ? -2.0 * s.h[i] : 2.0 * s.h[i];
    e = std::remainder(e, 2.0 * kPi);
    if (e <= -kPi) e += 2.0 * kPi;
    expected.push_back(e);
  }
  std::sort(expected.begin(), expected.end());
  const auto got = quasi_energies(floquet_unitary(s));
  ASSERT_EQ(got.size(), expected.size());
  for (size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], expected[i], 1e-9);
}

TEST(Floquet, QuasiEnergiesOnUnitCircle) {
  const Eigen::MatrixXcd u = floquet_unitary(random_spec(8, 0.4 * kPi, 6));
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(u, false);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) EXPECT_NEAR(std::abs(es.eigenvalues()[i]), 1.0, 1e-9);
  const auto e = quasi_energies(u);
  EXPECT_TRUE(std::is_sorted(e.begin(), e.end()));
  EXPECT_GT(e.front(), -kPi);
  EXPECT_LE(e.back(), kPi);
}

TEST(Floquet, Errors) {
  FloquetSpec s = random_spec(7, 0.1, 7);
  EXPECT_THROW(floquet_unitary(s), InvalidArgument);  // odd L in the zero sector
  s = random_spec(16, 0.1, 7);
  EXPECT_THROW(floquet_unitary(s), InvalidArgument);
  s = random_spec(6, 0.1, 7);
  s.h.pop_back();
  EXPECT_THROW(floquet_unitary(s), InvalidArgument);
}

TEST(SpacingRatio, PoissonValue) {
  // Independent uniform levels: r_bar -> 2 ln 2 - 1.
  Rng rng(8);
  double sum = 0.0;
  const int reps = 400;
  for (int k = 0; k < reps; ++k) {
    std::vector<double> e(252);
    for (double& x : e) x = rng.uniform(-kPi, kPi);
    std::sort(e.begin(), e.end());
    sum += mean_spacing_ratio(e);
  }
  EXPECT_NEAR(sum / reps, 2.0 * std::log(2.0) - 1.0, 0.01);
}

TEST(SpacingRatio, EdgeCases) {
  EXPECT_NEAR(mean_spacing_ratio({0.0, 1.0, 2.0, 3.0}), 1.0, 1e-15);
  EXPECT_NEAR(mean_spacing_ratio({0.0, 1.0, 3.0}), 0.5, 1e-15);
  EXPECT_TRUE(std::isnan(mean_spacing_ratio({0.0, 1.0, 1.0, 2.0})));
  EXPECT_THROW(mean_spacing_ratio({0.0, 1.0}), InvalidArgument);
}

TEST(LevelStats, BoundedAndDeterministic) {
  const LevelStats a = level_spacing_ratio(8, 0.25 * kPi, 50, 9), b = level_spacing_ratio(8, 0.25 * kPi, 50, 9);
  EXPECT_EQ(a.r_bar, b.r_bar);
  EXPECT_GE(a.r_bar, 0.0);
  EXPECT_LE(a.r_bar, 1.0);
  EXPECT_EQ(a.realizations + a.skipped, 50);
}

TEST(LevelStats, CrossoverBetweenPlateaus) {
  // Five angles at L = 8. The ratio rises up to 0.3 pi, where the ergodic
  // plateau starts; past its maximum near 0.35 pi it sags by about 0.015 at
  // this size, so the plateau is held to the same 0.02 band as the L = 10
  // reference values.
  std::vector<LevelStats> st;
  for (double f : {0.05, 0.1, 0.2, 0.3, 0.4}) st.push_back(level_spacing_ratio(8, f * kPi, 200, 10));
  for (size_t i = 1; i < 4; ++i)
    EXPECT_GE(st[i].r_bar, st[i - 1].r_bar - 3.0 * std::hypot(st[i].stderr_, st[i - 1].stderr_)) << i;
  EXPECT_LT(std::abs(st[4].r_bar - st[3].r_bar), 0.02);
  EXPECT_LT(st[1].r_bar, 0.43);
  EXPECT_GT(st[4].r_bar, 0.49);
}
