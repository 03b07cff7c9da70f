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
#include <map>
#include <vector>

#include "mipt/mapping.hpp"
#include "mipt/rng.hpp"
#include "mipt/statevec.hpp"

namespace mipt {

// Open-boundary MPS in mixed canonical form. site(i)[s] is the Dl x Dr matrix
// of physical index s; every site left of center() is left-orthonormal and
// every site right of it is right-orthonormal, so the norm lives on the
// center tensor.
class Mps {
 public:
  Mps(int n_sites, int chi_max);

  int size() const { return static_cast<int>(sites_.size()); }
  int chi_max() const { return chi_max_; }
  int center() const { return center_; }
  int bond_dim(int cut) const;  // between site cut and cut + 1
  int max_bond() const;
  double truncation_error() const { return trunc_error_; }

  void apply_1q(const Eigen::Matrix2cd& m, int q);
  // Any range: distant targets are brought together by SWAPs and moved back.
  void apply_2q(const Eigen::Matrix4cd& m, int qa, int qb);
  // Kraus maps are applied and then renormalized.
  void apply(const Operation& op);

  double prob_one(int q);
  // Projects, renormalizes and returns the branch probability.
  double project(int q, int bit);
  double expect_z(int q);
  double norm2();

  // Renyi-2 of the left part across `cut`, in bits.
  double bond_renyi2(int cut);
  double bond_entropy_vn(int cut);

  StateVector to_statevector();

 private:
  void move_center(int to);
  void apply_adjacent(const Eigen::Matrix4cd& m, int left);
  std::vector<double> singular_values(int cut);

  std::vector<std::vector<Eigen::MatrixXcd>> sites_;
  int chi_max_;
  int center_ = 0;
  double trunc_error_ = 0.0;
};

struct MpsTrace {
  std::vector<double> a_z;
  std::vector<int> tau;
  double trunc_error = 0.0;
  int max_bond = 1;
};

// Record-conditioned sweep over a mapped circuit. `bits` are 0/1 outcomes per
// 2D qubit; a_z and tau are taken at every patch mark on the probe's wire.
MpsTrace mps_sweep_decode(const MappedCircuit& mc, int probe, const std::vector<int>& bits, int chi);

struct ChiFit {
  double alpha = 0.0;
  double beta = 0.0;  // chi -> infinity value
  double residual = 0.0;
};

// Least squares of zeta = alpha / ln(chi) + beta.
ChiFit chi_extrapolate(const std::map<int, double>& zeta_by_chi);

// Expected zeta of a decoder that gets the sign right with probability q.
inline double damping_model(double q, double zeta_true) { return (2.0 * q - 1.0) * zeta_true; }

// Flips each sign with probability 1 - q.
std::vector<int> inject_sign_flips(const std::vector<int>& tau, double q, Rng& rng);

}  // namespace mipt
