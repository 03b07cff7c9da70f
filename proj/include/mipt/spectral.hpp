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

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace mipt {

// One disorder realization of the fsim(theta, 2 theta) Floquet chain with
// open boundaries: U_F = Z(h) E Z(h) O, where O acts on bonds (1,2), (3,4), ...,
// E on bonds (0,1), (2,3), ..., and Z(h) = exp(-i sum_i h_i Z_i).
struct FloquetSpec {
  int L = 10;
  double theta = 0.0;
  std::vector<double> h;  // per site, in [0, 2 pi)
  int charge = 0;         // sum of Z eigenvalues

  void validate() const;
};

inline constexpr int kMaxFloquetSites = 14;

// Basis states of the charge sector, ascending.
std::vector<uint32_t> charge_sector(int L, int charge);

// U_F restricted to the charge sector, in the basis of charge_sector().
Eigen::MatrixXcd floquet_unitary(const FloquetSpec& spec);
// U_F on the full 2^L space.
Eigen::MatrixXcd floquet_unitary_full(const FloquetSpec& spec);

// E_n with eigenvalues e^{-i E_n}, sorted ascending in (-pi, pi].
std::vector<double> quasi_energies(const Eigen::MatrixXcd& u);

// Mean of min(d_n, d_{n+1}) / max(d_n, d_{n+1}) over interior spacings; the
// spacing across the branch cut is not used. NaN if any spacing is below
// 1e-12.
double mean_spacing_ratio(const std::vector<double>& sorted_energies);

struct LevelStats {
  double r_bar = 0.0;
  double stderr_ = 0.0;
  int realizations = 0;  // used
  int skipped = 0;       // degenerate spectra
};

// Fields resampled per realization from derive_seed(seed, {k}).
LevelStats level_spacing_ratio(int L, double theta, int n_realizations, uint64_t seed);

}  // namespace mipt
