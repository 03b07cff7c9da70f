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
#include <vector>

#include "mipt/circuit.hpp"
#include "mipt/geometry.hpp"

namespace mipt {

struct ShallowOptions {
  FsimParams entangler = iswap_like_params();
  // A closing layer of random single-qubit gates randomizes the direction of
  // the final Bloch vectors before readout.
  bool final_sq_layer = true;
};

// Per cycle: one random sqrt gate on every qubit, then the cycle's color layer
// with each edge kept with probability rho. Edge draws are seeded by
// (seed, cycle, edge) and single-qubit draws by (seed, cycle, qubit).
Circuit build_shallow_2d(const Geometry& g, int t, double rho, uint64_t seed, const ShallowOptions& opt = {});

// Unitary brickwork on W = t wires over S = n - 1 steps, and the monitored
// circuit on n qubits it is dual to.
//
// Dual side: the gate on wires (w, w+1) at step s exists iff (W-2-w) = s mod 2,
// so the output wire W-1 is busy at even steps and idle at odd ones. Each gate
// is fsim(theta, 2 theta) preceded by z_pow(h) on both wires, h uniform in
// [0, 2) per wire and repeated every step. Wires start in |0> and wires
// 0..W-2 are measured at the end, giving the record b.
//
// Monitored side: qubit x is the time-x leg of a dual wire, and time slice w is
// dual wire w. Each dual gate becomes a weak measurement h followed by the
// unitary v. The dual boundary conditions become a |0><0| filter on qubit 0,
// and Measure/MeasureReset ops on qubit n-1 that consume b in order. Hence
// simulate_conditioned(monitored, b) yields the state that the teleport
// harness leaves on its ancillas after postselecting the dual on b.
struct DualPair {
  Circuit dual_unitary;
  Circuit monitored;
  int n = 0;      // monitored qubits, even
  int wires = 0;  // dual wires = monitored time slices
  int steps = 0;  // dual steps = n - 1
  double theta = 0.0;
  std::vector<double> h;
};

DualPair build_1d_dual_pair(int n, int t, double theta, uint64_t seed);

// Most probable record b of the dual circuit's final measurements, in the
// order simulate_conditioned(monitored, b) consumes it.
std::vector<int> most_probable_record(const DualPair& p);

// Adds n ancillas (indices wires..wires+n-1) to the dual circuit: the output
// wire starts in a Bell pair with A_0, pairs (A_s, A_s+1) for odd s < S-1 are
// Bell pairs, at each odd (idle) step s the output wire swaps with A_s, and a
// final swap moves the last leg to A_S. Afterwards A_k holds time-leg k of
// the output wire.
Circuit build_teleport_harness(const Circuit& dual);

double effective_measurement_rate(int m, int l, int t);

}  // namespace mipt
