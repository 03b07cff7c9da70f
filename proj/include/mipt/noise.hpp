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

#include <vector>

#include "mipt/rng.hpp"
#include "mipt/statevec.hpp"

namespace mipt {

// Single-qubit depolarizing channel E = exp(eps L): every Pauli expectation is
// multiplied by e^{-eps}.
struct DepolarizingChannel {
  double epsilon = 0.0;

  // Probability of a uniformly random X, Y or Z in the trajectory form.
  double pauli_probability() const;
};

void apply_depolarizing_stochastic(StateVector& psi, int q, double eps, Rng& rng);

// Exact channel on a density matrix. Linear, so it also accepts operators
// that are not normalized states.
DensityMatrix apply_depolarizing_dm(const DensityMatrix& rho, int q, double eps);
DensityMatrix apply_depolarizing_dm_all(const DensityMatrix& rho, double eps);

DensityMatrix to_density(const StateVector& psi);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

// Haar-random pure state from a normalized complex Gaussian vector.
StateVector haar_state(int n, Rng& rng);

// Haar average of 2^{-S2_A} after depolarizing every qubit:
// (2^{N_B} + f^{N_A}) / (2^N + 1), f = (1 + 3 e^{-2 eps}) / 2.
double noisy_haar_purity(int n, int n_a, double eps);

struct HaarSlope {
  double sigma = 1.0;  // log2 f, bits per qubit
  double peak = 0.0;   // N / (1 + sigma)
};

// Ascending slope of the mitigated noisy Page curve and the volume where the
// mitigated curve peaks.
HaarSlope mitigated_haar_slope(double eps, int n);

}  // namespace mipt
