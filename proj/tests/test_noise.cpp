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

#include <cmath>

#include "mipt/noise.hpp"

using namespace mipt;

namespace {

DensityMatrix plus_state() {
  StateVector psi(1, Backend::Serial);
  psi.apply_gate(hadamard(), 0);
  return to_density(psi);
}

double sigma_of(double eps) { return std::log2(0.5 * (1.0 + 3.0 * std::exp(-2.0 * eps))); }

}  // namespace

TEST(Depolarizing, PauliProbability) {
  EXPECT_EQ(DepolarizingChannel{0.0}.pauli_probability(), 0.0);
  EXPECT_NEAR(DepolarizingChannel{1e9}.pauli_probability(), 0.75, 1e-15);
  // Each of X, Y, Z with p/3: Pauli expectations shrink by 1 - 4p/3 = e^{-eps}.
  for (double eps : {0.01, 0.2, 1.5}) EXPECT_NEAR(1.0 - 4.0 * DepolarizingChannel{eps}.pauli_probability() / 3.0, std::exp(-eps), 1e-15);
  EXPECT_THROW(DepolarizingChannel{-0.1}.pauli_probability(), InvalidArgument);
}

TEST(Depolarizing, ZeroIsIdentity) {
  Rng rng(1);
  StateVector psi = haar_state(3, rng);
  const StateVector before = psi;
  for (int i = 0; i < 100; ++i) apply_depolarizing_stochastic(psi, i % 3, 0.0, rng);
  EXPECT_NEAR(fidelity(psi, before), 1.0, 1e-14);
  const DensityMatrix rho = to_density(before);
  EXPECT_LT((apply_depolarizing_dm_all(rho, 0.0).elems - rho.elems).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Depolarizing, LargeEpsilonFullyMixes) {
  Rng rng(2);
  double ax = 0.0, ay = 0.0, az = 0.0;
  const int n = 10000;
  for (int t = 0; t < n; ++t) {
    StateVector psi(1, Backend::Serial);
    psi.apply_gate(hadamard(), 0);
    apply_depolarizing_stochastic(psi, 0, 50.0, rng);
    const BlochVector b = bloch(to_density(psi));
    ax += b.ax, ay += b.ay, az += b.az;
  }
  EXPECT_NEAR(ax / n, 0.0, 0.02);
  EXPECT_NEAR(ay / n, 0.0, 0.02);
  EXPECT_NEAR(az / n, 0.0, 0.02);
}

TEST(Depolarizing, XDecaysAsExponential) {
  const double eps = 0.2;
  Rng rng(3);
  const int n = 10000;
  double sum = 0.0, sum2 = 0.0;
  for (int t = 0; t < n; ++t) {
    StateVector psi(1, Backend::Serial);
    psi.apply_gate(hadamard(), 0);
    apply_depolarizing_stochastic(psi, 0, eps, rng);
    const double x = bloch(to_density(psi)).ax;
    sum += x, sum2 += x * x;
  }
  const double mean = sum / n, se = std::sqrt((sum2 / n - mean * mean) / n);
  EXPECT_NEAR(mean, std::exp(-eps), 2.0 * se);
}

TEST(Depolarizing, DensityMatrixPauliTransfer) {
  const double eps = 0.37;
  const DensityMatrix out = apply_depolarizing_dm(plus_state(), 0, eps);
  EXPECT_NEAR(std::abs(out.elems(0, 1) - 0.5 * std::exp(-eps)), 0.0, 1e-15);
  EXPECT_NEAR(out.elems(0, 0).real(), 0.5, 1e-15);
  const BlochVector b = bloch(out);
  EXPECT_NEAR(b.ax, std::exp(-eps), 1e-14);
}

TEST(Depolarizing, CptpOnRandomStates) {
  Rng rng(4);
  for (int k = 0; k < 10; ++k) {
    const DensityMatrix rho = to_density(haar_state(3, rng));
    const DensityMatrix out = apply_depolarizing_dm_all(rho, rng.uniform(0.0, 2.0));
    EXPECT_NEAR(out.trace_real(), 1.0, 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(out.elems);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10);
    EXPECT_LT((out.elems - out.elems.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Depolarizing, TrajectoriesMatchChannel) {
  Rng rng(5);
  const StateVector psi = haar_state(2, rng);
  const double eps = 0.4;
  const DensityMatrix exact = apply_depolarizing_dm_all(to_density(psi), eps);
  const int n = 10000;
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(4, 4);
  Eigen::MatrixXd sum2 = Eigen::MatrixXd::Zero(4, 4);
  for (int t = 0; t < n; ++t) {
    StateVector s = psi;
    apply_depolarizing_stochastic(s, 0, eps, rng);
    apply_depolarizing_stochastic(s, 1, eps, rng);
    const Eigen::MatrixXcd r = to_density(s).elems;
    sum += r;
    sum2 += r.cwiseAbs2();
  }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const cplx mean = sum(i, j) / double(n);
      const double var = sum2(i, j) / n - std::norm(mean);
      // 2 sigma on each entry's modulus of deviation, with a small floor for
      // entries that never fluctuate.
      EXPECT_LT(std::abs(mean - exact.elems(i, j)), 2.0 * std::sqrt(std::max(var, 0.0) / n) * std::sqrt(2.0) + 1e-12)
          << i << "," << j;
    }
}

TEST(Depolarizing, SwapMatrixElementAnchor) {
  // (chi| E (x) E |chi) with |chi) the vectorized two-copy SWAP operator is
  // tr(SWAP (E (x) E)(SWAP)) = 1 + 3 e^{-2 eps}, which is 4 = tr(SWAP^2) at eps = 0.
  const double eps = 0.3;
  Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) swap(2 * a + b, 2 * b + a) = 1.0;
  DensityMatrix op{2, swap};
  op = apply_depolarizing_dm_all(op, eps);
  const double value = (swap * op.elems).trace().real();
  EXPECT_NEAR(value, 1.0 + 3.0 * std::exp(-2.0 * eps), 1e-12);
}

TEST(Haar, StateIsNormalized) {
  Rng rng(6);
  for (int n : {1, 4, 10}) EXPECT_NEAR(haar_state(n, rng).norm2(), 1.0, 1e-12);
}

TEST(NoisyHaar, ClosedFormAnchors) {
  EXPECT_NEAR(noisy_haar_purity(2, 2, 0.0), 1.0, 1e-15);
  EXPECT_NEAR(noisy_haar_purity(4, 2, 0.0), 8.0 / 17.0, 1e-15);
  EXPECT_NEAR(noisy_haar_purity(5, 0, 0.3), 1.0, 1e-15);
  EXPECT_THROW(noisy_haar_purity(3, 4, 0.0), InvalidArgument);
}

TEST(NoisyHaar, NoiselessMatchesSampledAverage) {
  Rng rng(7);
  const int reps = 500;
  double s = 0.0, s2 = 0.0;
  for (int k = 0; k < reps; ++k) {
    const double p = subsystem_purity(haar_state(4, rng), {0, 1});
    s += p, s2 += p * p;
  }
  const double mean = s / reps, se = std::sqrt((s2 / reps - mean * mean) / reps);
  EXPECT_NEAR(mean, 8.0 / 17.0, 2.0 * se);
}

TEST(NoisyHaar, MatchesSampledAverageAllCuts) {
  const int n = 6, reps = 500;
  for (double eps : {0.05, 0.2}) {
    Rng rng(derive_seed(8, {static_cast<uint64_t>(eps * 100)}));
    std::vector<double> s(n + 1, 0.0), s2(n + 1, 0.0);
    for (int k = 0; k < reps; ++k) {
      const DensityMatrix rho = apply_depolarizing_dm_all(to_density(haar_state(n, rng)), eps);
      for (int na = 1; na <= n; ++na) {
        std::vector<int> a(na);
        for (int i = 0; i < na; ++i) a[i] = i;
        const double p = partial_trace(rho, a).purity();
        s[na] += p, s2[na] += p * p;
      }
    }
    for (int na = 1; na <= n; ++na) {
      const double mean = s[na] / reps, se = std::sqrt((s2[na] / reps - mean * mean) / reps);
      EXPECT_NEAR(mean, noisy_haar_purity(n, na, eps), 2.0 * se + 1e-12) << "eps=" << eps << " na=" << na;
    }
  }
}

TEST(HaarSlope, Values) {
  EXPECT_NEAR(mitigated_haar_slope(0.0, 10).sigma, 1.0, 1e-15);
  EXPECT_NEAR(mitigated_haar_slope(0.0, 10).peak, 5.0, 1e-12);
  EXPECT_NEAR(mitigated_haar_slope(0.1, 10).sigma, sigma_of(0.1), 1e-15);
  EXPECT_NEAR(mitigated_haar_slope(0.1, 10).sigma, 0.789, 1e-3);
}

TEST(HaarSlope, MatchesMitigatedClosedFormCurve) {
  // Initial slope of the mitigated exact curve at N = 8.
  const int n = 8;
  const double eps = 0.1;
  auto s2 = [&](int na) { return -std::log2(noisy_haar_purity(n, na, eps)); };
  const double m0 = 0.0, m1 = s2(1) - s2(n) / n;
  EXPECT_NEAR(m1 - m0, mitigated_haar_slope(eps, n).sigma, 0.03);
}

TEST(HaarSlope, SmallEpsilonPeakShift) {
  // N / (1 + sigma) expanded to first order: N/2 + 3 eps N / (8 ln 2).
  const int n = 100;
  for (double eps : {1e-4, 1e-3}) {
    const double expansion = n / 2.0 + 3.0 * eps * n / (8.0 * std::log(2.0));
    EXPECT_NEAR(mitigated_haar_slope(eps, n).peak, expansion, 50.0 * eps * eps * n);
  }
}
