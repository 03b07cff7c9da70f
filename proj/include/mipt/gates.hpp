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
#include <string>
#include <vector>

#include "mipt/common.hpp"
#include "mipt/rng.hpp"

namespace mipt {

using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

// Two-qubit matrices act on |a b> with index 2*a + b, where a is the first
// target passed to the application routine.

struct FsimParams {
  double theta = 0.0;
  double phi = 0.0;
  double delta_plus = 0.0;
  double delta_minus = 0.0;
  double delta_minus_off = 0.0;

  // All angles reduced to (-pi, pi].
  FsimParams canonical() const;
};

double wrap_angle(double a);

struct Gate1Q {
  Mat2 matrix = Mat2::Identity();
  std::string label = "id";
  std::vector<double> params;
};

struct Gate2Q {
  Mat4 matrix = Mat4::Identity();
  std::string label = "id2";
  std::vector<double> params;
};

// a acts on the first target (high index bit), b on the second.
Mat4 kron(const Mat2& a, const Mat2& b);

template <typename M>
bool is_unitary(const M& m, double tol = 1e-10) {
  const auto d = (m.adjoint() * m - M::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
  return d <= tol;
}

Gate2Q fsim(const FsimParams& p);
Gate2Q fsim(double theta, double phi);
Gate2Q cz();
Gate2Q swap_gate();
Gate2Q cnot();
// Device-agnostic stand-in for the shallow-circuit entangler.
Gate2Q iswap_like();
FsimParams iswap_like_params();

Gate1Q identity1();
Gate1Q pauli_x();
Gate1Q pauli_y();
Gate1Q pauli_z();
Gate1Q hadamard();
Gate1Q z_pow(double h);

// Principal square root: eigenvalue phases taken in (-pi, pi] before halving.
Mat2 principal_sqrt(const Mat2& m);

// The eight-element set {sqrt(X)^{+-1}, sqrt(Y)^{+-1}, sqrt(W)^{+-1}, sqrt(V)^{+-1}}
// with W = (X+Y)/sqrt2, V = (X-Y)/sqrt2. Index order: x, x_inv, y, y_inv, w,
// w_inv, v, v_inv.
Gate1Q sq_gate(int index);
inline constexpr int kNumSqGates = 8;
Gate1Q random_sq_gate(Rng& rng);

// Haar-random 2x2 unitary.
Gate1Q cue_1q(Rng& rng);

// Rebuild a gate from its label and params (circuit deserialization).
Gate1Q gate1_from_label(const std::string& label, const std::vector<double>& params);
Gate2Q gate2_from_label(const std::string& label, const std::vector<double>& params);

}  // namespace mipt
