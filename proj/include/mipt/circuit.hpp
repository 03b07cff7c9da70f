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
#include <set>
#include <string>
#include <vector>

#include "mipt/gates.hpp"
#include "mipt/statevec.hpp"

namespace mipt {

// Kraus ops are non-unitary linear maps followed by renormalization. They
// carry the weak measurements and boundary projections that appear when a
// dual circuit is read as a monitored one.
enum class OpKind { Unitary, Measure, Reset, MeasureReset, Kraus };

struct Operation {
  OpKind kind = OpKind::Unitary;
  std::vector<int> targets;
  Eigen::MatrixXcd matrix;  // 2x2 or 4x4 for Unitary and Kraus, empty otherwise
  std::string label;
  std::vector<double> params;

  static Operation unitary(const Gate1Q& g, int q);
  static Operation unitary(const Gate2Q& g, int a, int b);
  static Operation kraus(const Eigen::MatrixXcd& m, std::vector<int> targets, std::string label);
  static Operation measure(int q) { return {OpKind::Measure, {q}, {}, "measure", {}}; }
  static Operation reset(int q) { return {OpKind::Reset, {q}, {}, "reset", {}}; }
  static Operation measure_reset(int q) { return {OpKind::MeasureReset, {q}, {}, "measure_reset", {}}; }

  bool is_two_qubit() const { return targets.size() == 2; }
  bool produces_outcome() const { return kind == OpKind::Measure || kind == OpKind::MeasureReset; }
};

using Moment = std::vector<Operation>;

struct CircuitMeta {
  std::string family;  // "shallow_2d", "dual_unitary", "monitored", "mapped", ...
  int depth = 0;
  double rho = 1.0;
  uint64_t seed = 0;
  std::string entangler;  // label and angles of the two-qubit gate
};

struct Circuit {
  int n_qubits = 0;
  std::vector<Moment> moments;
  CircuitMeta meta;

  // Throws InvalidArgument on out-of-range targets or overlapping supports.
  void validate() const;
  size_t count(OpKind kind) const;
  size_t two_qubit_gate_count() const;
  size_t outcome_count() const;
};

// Simulates with Born sampling; returns the outcomes of Measure and
// MeasureReset ops in circuit order.
std::vector<int> simulate(const Circuit& c, StateVector& psi, Rng& rng);

// Simulates with every outcome-producing op projected onto the given bits
// (in circuit order). Returns the probability of the record; throws
// DegenerateBranch for impossible records. A bare Reset is only allowed on a
// qubit already in a basis state.
double simulate_conditioned(const Circuit& c, StateVector& psi, const std::vector<int>& outcomes);

void apply_operation(StateVector& psi, const Operation& op);

// Initial-state qubits whose state can influence `qubit` at the end.
std::set<int> past_lightcone(const Circuit& c, int qubit);
std::set<int> past_lightcone(const Circuit& c, const std::vector<int>& qubits);

}  // namespace mipt
