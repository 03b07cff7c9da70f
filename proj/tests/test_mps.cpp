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

#include "mipt/builders.hpp"
#include "mipt/decoder.hpp"
#include "mipt/mapping.hpp"
#include "mipt/mps.hpp"

using namespace mipt;

namespace {

// Same random layer sequence on an MPS and a dense state; two-qubit gates
// reach up to range 3.
void random_layers(Mps& mps, StateVector& psi, int layers, Rng& rng) {
  const int n = psi.n_qubits();
  for (int l = 0; l < layers; ++l) {
    for (int q = 0; q < n; ++q) {
      const Gate1Q g = random_sq_gate(rng);
      mps.apply_1q(g.matrix, q);
      psi.apply_gate(g, q);
    }
    for (int k = 0; k < n / 2; ++k) {
      const int a = static_cast<int>(rng.below(n));
      const int b = std::min(n - 1, a + 1 + static_cast<int>(rng.below(3)));
      if (a == b) continue;
      const Gate2Q g = fsim(rng.uniform(0.0, M_PI), rng.uniform(0.0, M_PI));
      // Reversed target order exercises the transposed application.
      if (rng.bernoulli(0.5)) {
        mps.apply_2q(g.matrix, a, b);
        psi.apply_gate(g, a, b);
      } else {
        mps.apply_2q(g.matrix, b, a);
        psi.apply_gate(g, b, a);
      }
    }
  }
}

struct Decoded {
  std::vector<int> bits;
  SweepTrace exact;
};

std::vector<Decoded> exact_shots(const Circuit& c, const Geometry& g, int n, uint64_t seed) {
  const SweepSchedule sched = lightcone_sweep(c, decoding_plan(c, g));
  std::vector<Decoded> out;
  for (int s = 0; s < n; ++s) {
    Rng rng(derive_seed(seed, {static_cast<uint64_t>(s)}));
    auto [bits, tr] = sample_along_sweep(c, sched, g.probe, rng);
    out.push_back({std::move(bits), std::move(tr)});
  }
  return out;
}

}  // namespace

TEST(Mps, StartsInZeroState) {
  Mps m(5, 4);
  EXPECT_NEAR(m.norm2(), 1.0, 1e-14);
  for (int q = 0; q < 5; ++q) EXPECT_NEAR(m.expect_z(q), 1.0, 1e-14);
  EXPECT_EQ(m.max_bond(), 1);
  EXPECT_THROW(Mps(0, 4), InvalidArgument);
  EXPECT_THROW(Mps(3, 0), InvalidArgument);
}

TEST(Mps, UntruncatedMatchesDenseState) {
  for (uint64_t seed : {1, 2, 3}) {
    Rng rng(seed);
    Mps mps(8, 256);
    StateVector psi(8, Backend::Serial);
    random_layers(mps, psi, 6, rng);
    EXPECT_EQ(mps.truncation_error(), 0.0);
    EXPECT_NEAR(mps.norm2(), 1.0, 1e-8);
    EXPECT_NEAR(fidelity(mps.to_statevector(), psi), 1.0, 1e-10) << "seed " << seed;
    for (int q = 0; q < 8; ++q) EXPECT_NEAR(mps.expect_z(q), psi.expect_z(q), 1e-10);
  }
}

TEST(Mps, BondEntropyMatchesReducedState) {
  Rng rng(4);
  Mps mps(8, 256);
  StateVector psi(8, Backend::Serial);
  random_layers(mps, psi, 5, rng);
  for (int cut = 0; cut + 1 < 8; ++cut) {
    std::vector<int> left;
    for (int q = 0; q <= cut; ++q) left.push_back(q);
    EXPECT_NEAR(mps.bond_renyi2(cut), -std::log2(subsystem_purity(psi, left)), 1e-9) << "cut " << cut;
    EXPECT_GE(mps.bond_entropy_vn(cut), mps.bond_renyi2(cut) - 1e-12);
  }
}

TEST(Mps, TruncationCapsEntanglement) {
  Rng rng(5);
  for (int chi : {2, 4, 8}) {
    Mps mps(10, chi);
    StateVector psi(10, Backend::Serial);
    random_layers(mps, psi, 8, rng);
    EXPECT_LE(mps.max_bond(), chi);
    EXPECT_NEAR(mps.norm2(), 1.0, 1e-8);
    EXPECT_GT(mps.truncation_error(), 0.0);
    for (int cut = 0; cut + 1 < 10; ++cut) {
      EXPECT_LE(mps.bond_entropy_vn(cut), std::log2(chi) + 1e-9);
      EXPECT_LE(mps.bond_renyi2(cut), std::log2(chi) + 1e-9);
    }
  }
}

TEST(Mps, ProjectionMatchesDenseState) {
  Rng rng(6);
  Mps mps(6, 64);
  StateVector psi(6, Backend::Serial);
  random_layers(mps, psi, 4, rng);
  for (int q : {2, 0, 5}) {
    EXPECT_NEAR(mps.prob_one(q), psi.prob_one(q), 1e-10);
    const int bit = psi.prob_one(q) > 0.5;
    EXPECT_NEAR(mps.project(q, bit), psi.project(q, bit), 1e-10);
    EXPECT_NEAR(mps.norm2(), 1.0, 1e-10);
  }
  EXPECT_NEAR(fidelity(mps.to_statevector(), psi), 1.0, 1e-10);
}

TEST(Mps, ImpossibleProjectionThrows) {
  Mps m(3, 4);
  EXPECT_THROW(m.project(1, 1), DegenerateBranch);
}

TEST(MpsDecode, LargeChiMatchesExactSweep) {
  // 50 shots on grid19 at T = 3: the mapped register is small enough that
  // chi = 2^{ceil(wires / 2)} never truncates.
  const Geometry g = builtin_geometry("grid19");
  const Circuit c = build_shallow_2d(g, 3, 1.0, 31);
  const MappedCircuit mc = map_2d_to_1d(c, g, decoding_mapping_plan(c, g));
  const int chi = 1 << ((mc.n_wires() + 1) / 2);
  for (const auto& d : exact_shots(c, g, 50, 8)) {
    const MpsTrace tr = mps_sweep_decode(mc, g.probe, d.bits, chi);
    EXPECT_EQ(tr.trunc_error, 0.0);
    ASSERT_EQ(tr.a_z.size(), d.exact.a_z.size());
    for (size_t r = 0; r < tr.a_z.size(); ++r) {
      EXPECT_NEAR(tr.a_z[r], d.exact.a_z[r], 1e-8) << "r=" << r;
      EXPECT_EQ(tr.tau[r], d.exact.tau[r]);
    }
  }
}

TEST(MpsDecode, TruncationNonIncreasingInChi) {
  const Geometry g = builtin_geometry("n24");
  const Circuit c = build_shallow_2d(g, 5, 1.0, 12);
  const MappedCircuit mc = map_2d_to_1d(c, g, decoding_mapping_plan(c, g));
  const auto shots = exact_shots(c, g, 40, 13);
  double prev = std::numeric_limits<double>::infinity();
  for (int chi : {2, 4, 8, 16}) {
    double sum = 0.0;
    for (const auto& d : shots) sum += mps_sweep_decode(mc, g.probe, d.bits, chi).trunc_error;
    EXPECT_LE(sum / shots.size(), prev + 1e-12) << "chi " << chi;
    prev = sum / shots.size();
  }
}

TEST(MpsDecode, DisentanglingPhaseConverges) {
  const Geometry g = builtin_geometry("grid19");
  int agree = 0, total = 0;
  for (int k = 0; k < 10; ++k) {
    const Circuit c = build_shallow_2d(g, 5, 0.3, derive_seed(14, {static_cast<uint64_t>(k)}));
    const MappedCircuit mc = map_2d_to_1d(c, g, decoding_mapping_plan(c, g));
    for (const auto& d : exact_shots(c, g, 20, k)) {
      const MpsTrace tr = mps_sweep_decode(mc, g.probe, d.bits, 8);
      for (size_t r = 0; r < tr.tau.size(); ++r) agree += tr.tau[r] == d.exact.tau[r], ++total;
    }
  }
  EXPECT_GE(static_cast<double>(agree) / total, 0.99);
}

TEST(MpsDecode, RejectsDroppedProbe) {
  const Geometry g = builtin_geometry("n12");
  const Circuit c = build_shallow_2d(g, 2, 1.0, 1);
  const MappedCircuit mc = map_2d_to_1d(c, g, chain_mapping_plan(g));
  int dropped = -1;
  for (int q = 0; q < g.size(); ++q)
    if (mc.final_wire[q] < 0) dropped = q;
  ASSERT_GE(dropped, 0);
  EXPECT_THROW(mps_sweep_decode(mc, dropped, std::vector<int>(g.size(), 0), 4), InvalidArgument);
}

TEST(ChiExtrapolate, ConstantInput) {
  const ChiFit f = chi_extrapolate({{32, 0.4}, {64, 0.4}, {128, 0.4}, {256, 0.4}});
  EXPECT_NEAR(f.alpha, 0.0, 1e-12);
  EXPECT_NEAR(f.beta, 0.4, 1e-12);
  EXPECT_NEAR(f.residual, 0.0, 1e-20);
}

TEST(ChiExtrapolate, RecoversAnsatzWithNoise) {
  // Independent fits on 400 noisy draws: the spread of the estimates sets
  // the 2 sigma window.
  const double alpha = -1.3, beta = 0.8, noise = 0.01;
  Rng rng(15);
  double sa = 0, sa2 = 0, sb = 0, sb2 = 0;
  const int reps = 400;
  ChiFit one;
  for (int k = 0; k < reps; ++k) {
    std::map<int, double> z;
    for (int chi : {32, 64, 128, 256}) z[chi] = alpha / std::log(chi) + beta + noise * rng.normal();
    one = chi_extrapolate(z);
    sa += one.alpha, sa2 += one.alpha * one.alpha, sb += one.beta, sb2 += one.beta * one.beta;
  }
  const double ma = sa / reps, mb = sb / reps;
  const double sda = std::sqrt(sa2 / reps - ma * ma), sdb = std::sqrt(sb2 / reps - mb * mb);
  EXPECT_NEAR(one.alpha, alpha, 2.0 * sda + 1e-12);
  EXPECT_NEAR(one.beta, beta, 2.0 * sdb + 1e-12);
  EXPECT_NEAR(ma, alpha, 3.0 * sda / std::sqrt(reps));
  EXPECT_NEAR(mb, beta, 3.0 * sdb / std::sqrt(reps));
}

TEST(ChiExtrapolate, Errors) {
  EXPECT_THROW(chi_extrapolate({{32, 0.1}}), InvalidArgument);
  EXPECT_THROW(chi_extrapolate({{1, 0.1}, {4, 0.2}}), InvalidArgument);
}

TEST(Damping, Endpoints) {
  EXPECT_EQ(damping_model(1.0, 0.7), 0.7);
  EXPECT_EQ(damping_model(0.5, 0.7), 0.0);
  EXPECT_NEAR(damping_model(0.8, 1.0), 0.6, 1e-15);
}

TEST(Damping, SignFlipRate) {
  Rng rng(16);
  const std::vector<int> tau(100000, 1);
  const auto flipped = inject_sign_flips(tau, 0.8, rng);
  int kept = 0;
  for (int t : flipped) kept += t == 1;
  // Binomial sd is 0.4 / sqrt(1e5) ~ 0.0013.
  EXPECT_NEAR(kept / 1e5, 0.8, 0.005);
  EXPECT_EQ(inject_sign_flips(tau, 1.0, rng), tau);
  EXPECT_THROW(inject_sign_flips(tau, 1.5, rng), InvalidArgument);
}

TEST(Damping, InjectedFlipsOnExactDecoding) {
  // zeta from flipped signs is (2q - 1) zeta_exact within 2 standard errors.
  const Geometry g = builtin_geometry("grid19");
  std::vector<int> zp;
  std::vector<std::vector<int>> taus;
  for (int k = 0; k < 40; ++k) {
    const Circuit c = build_shallow_2d(g, 3, 1.0, derive_seed(17, {static_cast<uint64_t>(k)}));
    for (const auto& d : exact_shots(c, g, 100, k)) {
      zp.push_back(signed_bit(d.bits[g.probe]));
      taus.push_back(d.exact.tau);
    }
  }
  const size_t r = taus[0].size() - 1;
  Rng rng(18);
  double exact = 0.0, s = 0.0, s2 = 0.0;
  for (size_t i = 0; i < zp.size(); ++i) {
    exact += 2.0 * zp[i] * taus[i][r];
    const double x = 2.0 * zp[i] * inject_sign_flips(taus[i], 0.8, rng)[r];
    s += x, s2 += x * x;
  }
  const double n = static_cast<double>(zp.size());
  exact /= n;
  const double mean = s / n, se = std::sqrt((s2 / n - mean * mean) / n);
  EXPECT_NEAR(mean, damping_model(0.8, exact), 2.0 * se);
}
