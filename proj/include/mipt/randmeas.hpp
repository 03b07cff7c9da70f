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
#include <functional>
#include <map>
#include <vector>

#include "mipt/gates.hpp"
#include "mipt/rng.hpp"
#include "mipt/statevec.hpp"

namespace mipt {

// One random basis: bitstring keys follow the statevec bit order.
struct RandomizedInstance {
  uint64_t seed = 0;
  int shots = 0;
  std::map<uint64_t, int> counts;
};

struct RandomizedDataset {
  int n_qubits = 0;
  std::vector<RandomizedInstance> instances;

  void validate() const;
};

// stderr is NaN with fewer than two instances.
struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

// Per instance, 2^{N_A} sum_{s,s'} (-2)^{-H(s,s')} P(s)P(s') with the product
// moment replaced by its unbiased U-statistic; mean over instances, jackknife
// error over instances.
Estimate estimate_purity(const RandomizedDataset& data, const std::vector<int>& subsystem);

// -log2 of the purity estimate. The purity is floored at 2^{-N_A} so that
// sampling noise never produces an infinite entropy.
Estimate estimate_renyi2(const RandomizedDataset& data, const std::vector<int>& subsystem);

// I2 = S_A + S_B - S_AB from one dataset.
Estimate mutual_information(const RandomizedDataset& data, const std::vector<int>& a, const std::vector<int>& b);

struct EntropyPoint {
  int volume = 0;
  double s2 = 0.0;
  double stderr_ = 0.0;
};

struct EntropyCurve {
  int n_qubits = 0;
  std::vector<EntropyPoint> points;  // ascending volume
  bool mitigated = false;
};

// Subtracts (vol / N) S2(whole system) from every point.
EntropyCurve mitigate(const EntropyCurve& curve);

// S2 at each volume 0..N, averaged over every contiguous window of `order`.
EntropyCurve entropy_curve(const RandomizedDataset& data, const std::vector<int>& order);
// Same shape from a per-subsystem purity function (exact or estimated).
EntropyCurve entropy_curve(int n, const std::function<double(const std::vector<int>&)>& purity);

using UnitarySampler = std::function<Gate1Q(Rng&)>;

// Fresh local unitaries per qubit and instance, then `shots` Born samples.
RandomizedDataset sample_randomized(const StateVector& psi, int n_instances, int shots, Rng& rng,
                                    const UnitarySampler& sampler = cue_1q);

// Same protocol for a mixed state given by its density matrix.
RandomizedDataset sample_randomized(const DensityMatrix& rho, int n_instances, int shots, Rng& rng,
                                    const UnitarySampler& sampler = cue_1q);

}  // namespace mipt
