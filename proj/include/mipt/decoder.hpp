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

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mipt/circuit.hpp"
#include "mipt/geometry.hpp"
#include "mipt/sweep.hpp"

namespace mipt {

// One repetition: signed bits (+1 for outcome 0) for every qubit, the probe
// included at its own index.
struct ShotRecord {
  int circuit_id = 0;
  uint64_t seed = 0;
  std::vector<int> bits;

  int z(int qubit) const { return bits.at(qubit); }
};

inline int signed_bit(int b) { return 1 - 2 * b; }
inline int binary_bit(int z) { return z > 0 ? 0 : 1; }

// Ties go to +1. |a| below kTieTolerance counts as a tie: a_z that vanishes
// by symmetry comes out as rounding noise whose sign differs between backends.
inline constexpr double kTieTolerance = 1e-12;
inline int sign_of(double a) { return a >= -kTieTolerance ? 1 : -1; }

// Dense state restricted to the active set of a lightcone sweep; measured
// qubits are projected and then dropped from the register.
class ActiveRegister {
 public:
  explicit ActiveRegister(int n_qubits);

  void add(int q);
  void apply(const Operation& op);
  double prob_one(int q) const;
  // Projects q onto `bit`, renormalizes and drops it. Returns the branch
  // probability; throws DegenerateBranch below kDegenerateThreshold.
  double finish(int q, int bit);
  double expect_z(int q) const;
  int size() const { return static_cast<int>(qubit_at_.size()); }
  int peak() const { return peak_; }

 private:
  int slot(int q) const;

  std::vector<cplx> amps_{cplx(1.0)};
  std::vector<int> slot_of_;
  std::vector<int> qubit_at_;
  int peak_ = 0;
};

struct SweepTrace {
  std::vector<double> a_z;  // per r: <Z_probe> given the record on D_r
  std::vector<int> tau;     // per r: sign(a_z)
  int peak_active = 0;
};

// Record-conditioned probe Bloch z for every patch radius, following `sched`.
// `bits` are 0/1 outcomes per qubit; the probe entry is ignored.
SweepTrace conditional_bloch_sweep(const Circuit& c, const SweepSchedule& sched, int probe,
                                   const std::vector<int>& bits);

// Born sampling along the sweep: each qubit is sampled when it is measured
// and the probe last, which reproduces the joint end-of-circuit distribution.
// Also returns the trace for the sampled record.
std::pair<std::vector<int>, SweepTrace> sample_along_sweep(const Circuit& c, const SweepSchedule& sched, int probe,
                                                           Rng& rng);

struct NoiseModel {
  double epsilon = 0.0;  // depolarizing strength per qubit per cycle
};

// Shots of a shallow circuit. With noise, every shot runs its own copy of the
// circuit with Pauli errors inserted after each entangling layer and before
// readout.
std::vector<ShotRecord> run_shots(const Circuit& c, const Geometry& g, int circuit_id, int n_shots, uint64_t seed,
                                  std::optional<NoiseModel> noise = std::nullopt);

// Stochastic Pauli insertions of a depolarizing channel of strength eps.
Circuit noisy_copy(const Circuit& c, double eps, Rng& rng);

struct DecodedShot {
  int circuit_id = 0;
  int z_p = 1;
  std::vector<int> tau;
  std::vector<double> a_z;
  bool rejected = false;
};

DecodedShot decode_shot(const Circuit& c, const SweepSchedule& sched, int probe, const ShotRecord& shot);

struct DecodeResult {
  int r_max = 0;
  std::vector<double> zeta, zeta_sim, s_proxy, s_proxy_sim, zeta_tilde, s_proxy_tilde;
  std::vector<double> zeta_err, zeta_sim_err, s_proxy_err, s_proxy_sim_err, zeta_tilde_err, s_proxy_tilde_err;
  size_t shots = 0;
  size_t circuits = 0;
  size_t rejected = 0;
  // False when zeta(r_max) is zero within its error; zeta_tilde is then NaN.
  bool mitigation_defined = true;
};

double s_proxy_of(double zeta);

// zeta(r) = 2 <z_p tau(r)>, zeta_sim(r) = 2 <|a_z(r)|>; errors from a
// bootstrap over circuit instances.
DecodeResult zeta(const std::vector<DecodedShot>& shots, int n_boot = 200, uint64_t seed = 0);

struct NoiseFit {
  double rho = 0.0;
  double b = 1.0;  // zeta(r_max) ~ c b^N
  double c = 1.0;
  bool disentangling = false;  // b within `tol` of 1
};

NoiseFit noise_as_probe(double rho, const std::vector<int>& sizes, const std::vector<double>& zeta_rmax,
                        double tol = 0.01);

struct CurvePoint {
  int n = 0;
  double rho = 0.0;
  double value = 0.0;
};

struct Collapse {
  std::vector<CurvePoint> scaled;  // rho replaced by (rho - rho_c) N^{1/(2 nu)}
  double residual = 0.0;
};

Collapse scaling_collapse(const std::vector<CurvePoint>& data, double rho_c, double nu);
// Residual minimizer over a rho_c grid at fixed nu.
double best_collapse_rho_c(const std::vector<CurvePoint>& data, double nu, double lo, double hi, double step);
// First sign change of curve(n_large) - curve(n_small), linearly interpolated;
// NaN if the curves do not cross.
double crossing_point(const std::vector<double>& rhos, const std::vector<double>& small,
                      const std::vector<double>& large);

}  // namespace mipt
