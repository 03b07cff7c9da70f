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

#include "mipt/gates.hpp"

namespace mipt {

using Vec4 = Eigen::Vector4cd;

// Space-time dual: the gate read sideways. The dual acts on the pair
// (time-in slice, time-out slice) of one wire, mapping the left wire's
// indices (i0, o0) to the right wire's (i1, o1):
//   dual[2*i1 + o1][2*i0 + o0] = U[2*o0 + o1][2*i0 + i1].
// The permutation is an involution.
Mat4 spacetime_dual(const Mat4& u);
inline Mat4 spacetime_dual(const Gate2Q& g) { return spacetime_dual(g.matrix); }

struct DualDecomposition {
  Mat4 u_tilde;
  Mat4 v;  // unitary
  Mat4 h;  // Hermitian, 0 <= h <= 1
  // Largest and smallest eigenvalue of h; psi_theta spans the top eigenspace.
  double lambda_psi = 0.0;
  double lambda_perp = 0.0;
  Vec4 psi_theta;
  // Set when h had a kernel and v was completed there.
  bool kernel_completed = false;
};

// u_tilde = 2 v h with h = sqrt(u_tilde^dag u_tilde) / 2.
DualDecomposition polar_decompose(const Mat4& u_tilde);

struct MeasurementStrength {
  double lambda_psi = 0.0;   // sqrt(1 + 3 cos^2 theta) / 2
  double lambda_perp = 0.0;  // |sin theta| / 2
  Vec4 psi_theta;            // (e^{-i theta/2}|00> + e^{i theta/2}|11>) / sqrt2
};

// Closed form for the dual of fsim(theta, 2 theta).
MeasurementStrength measurement_strength(double theta);

// v restricted to span{|00>, |11>}. On the other block v acts as -iX, the
// iSWAP part, so this is the whole nontrivial content of v.
Mat2 v_prime(const DualDecomposition& d);

}  // namespace mipt
