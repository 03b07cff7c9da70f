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
#include <vector>

#include "mipt/common.hpp"
#include "mipt/gates.hpp"
#include "mipt/rng.hpp"

namespace mipt {

enum class Backend { Serial, OpenMP };

struct DensityMatrix {
  int n_qubits = 0;
  Eigen::MatrixXcd elems;

  double trace_real() const { return elems.trace().real(); }
  double purity() const;
};

struct BlochVector {
  double ax = 0.0, ay = 0.0, az = 0.0;
  double norm() const;
};

// Dense pure state. Qubit k is bit k of the amplitude index.
class StateVector {
 public:
  explicit StateVector(int n_qubits, Backend backend = Backend::OpenMP);
  static StateVector from_amplitudes(std::vector<cplx> amps, Backend backend = Backend::OpenMP);

  int n_qubits() const { return n_; }
  size_t dim() const { return amps_.size(); }
  const std::vector<cplx>& amps() const { return amps_; }
  std::vector<cplx>& amps() { return amps_; }
  Backend backend() const { return backend_; }
  void set_backend(Backend b) { backend_ = b; }

  // Unitary gates; non-unitary matrices are rejected.
  void apply_gate(const Gate1Q& g, int q);
  void apply_gate(const Gate2Q& g, int qa, int qb);

  // Arbitrary linear maps, no unitarity check and no renormalization.
  void apply_matrix(const Mat2& m, int q);
  void apply_matrix(const Mat4& m, int qa, int qb);

  double prob_one(int q) const;
  // Projects onto bit(q) == bit and renormalizes. Returns the branch
  // probability; throws DegenerateBranch below kDegenerateThreshold.
  double project(int q, int bit);
  int measure(int q, Rng& rng);
  void reset(int q, Rng& rng);

  double norm2() const;
  void normalize();
  // <Z_q>.
  double expect_z(int q) const;

 private:
  void check_qubit(int q) const;

  int n_;
  std::vector<cplx> amps_;
  Backend backend_;
};

// rho over `subsystem`, whose i-th entry becomes bit i of the reduced index.
DensityMatrix reduced_density(const StateVector& psi, const std::vector<int>& subsystem);
inline constexpr int kMaxReducedQubits = 14;

// Tr rho_A^2 computed from the smaller of the two Gram matrices, so it works
// for any subsystem size.
double subsystem_purity(const StateVector& psi, const std::vector<int>& subsystem);

double renyi2(const DensityMatrix& rho);
BlochVector bloch(const DensityMatrix& rho);

// Joint distribution of `qubits`: entry k has bit j set when qubits[j] reads 1.
std::vector<double> marginal_probabilities(const StateVector& psi, const std::vector<int>& qubits);
// Projects `qubits` onto their most probable joint outcome, the lowest index
// on ties, and returns those bits.
std::vector<int> postselect_most_probable(StateVector& psi, const std::vector<int>& qubits);

StateVector tensor(const StateVector& lo, const StateVector& hi);
double fidelity(const StateVector& a, const StateVector& b);

}  // namespace mipt
