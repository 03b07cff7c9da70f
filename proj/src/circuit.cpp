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

#include "mipt/circuit.hpp"

#include <cmath>
#include <string>

namespace mipt {

Operation Operation::unitary(const Gate1Q& g, int q) { return {OpKind::Unitary, {q}, g.matrix, g.label, g.params}; }

Operation Operation::unitary(const Gate2Q& g, int a, int b) {
  return {OpKind::Unitary, {a, b}, g.matrix, g.label, g.params};
}

Operation Operation::kraus(const Eigen::MatrixXcd& m, std::vector<int> targets, std::string label) {
  const size_t dim = size_t{1} << targets.size();
  if (static_cast<size_t>(m.rows()) != dim || static_cast<size_t>(m.cols()) != dim)
    throw InvalidArgument("kraus matrix size does not match target count");
  return {OpKind::Kraus, std::move(targets), m, std::move(label), {}};
}

void Circuit::validate() const {
  for (size_t t = 0; t < moments.size(); ++t) {
    std::vector<bool> used(n_qubits, false);
    for (const auto& op : moments[t]) {
      if (op.targets.empty() || op.targets.size() > 2) throw InvalidArgument("operation must have 1 or 2 targets");
      if ((op.kind == OpKind::Unitary || op.kind == OpKind::Kraus) &&
          op.matrix.rows() != (1 << op.targets.size()))
        throw InvalidArgument("matrix size does not match targets in moment " + std::to_string(t));
      for (int q : op.targets) {
        if (q < 0 || q >= n_qubits) throw InvalidArgument("target out of range in moment " + std::to_string(t));
        if (used[q]) throw InvalidArgument("overlapping supports in moment " + std::to_string(t));
        used[q] = true;
      }
    }
  }
}

size_t Circuit::count(OpKind kind) const {
  size_t k = 0;
  for (const auto& m : moments)
    for (const auto& op : m) k += op.kind == kind;
  return k;
}

size_t Circuit::two_qubit_gate_count() const {
  size_t k = 0;
  for (const auto& m : moments)
    for (const auto& op : m) k += op.kind == OpKind::Unitary && op.is_two_qubit();
  return k;
}

size_t Circuit::outcome_count() const {
  size_t k = 0;
  for (const auto& m : moments)
    for (const auto& op : m) k += op.produces_outcome();
  return k;
}

void apply_operation(StateVector& psi, const Operation& op) {
  switch (op.kind) {
    case OpKind::Unitary:
    case OpKind::Kraus:
      if (op.is_two_qubit())
        psi.apply_matrix(Mat4(op.matrix), op.targets[0], op.targets[1]);
      else
        psi.apply_matrix(Mat2(op.matrix), op.targets[0]);
      if (op.kind == OpKind::Kraus) {
        const double nn = psi.norm2();
        if (nn < kDegenerateThreshold) throw DegenerateBranch("kraus operator " + op.label + " annihilated the state");
        psi.normalize();
      }
      break;
    case OpKind::Reset: {
      const double p1 = psi.prob_one(op.targets[0]);
      if (p1 > 1e-12 && p1 < 1.0 - 1e-12) throw InvalidArgument("unrecorded reset of a qubit in superposition");
      if (p1 >= 0.5) psi.apply_matrix(pauli_x().matrix, op.targets[0]);
      break;
    }
    default:
      throw InvalidArgument("apply_operation cannot handle outcome-producing ops");
  }
}

std::vector<int> simulate(const Circuit& c, StateVector& psi, Rng& rng) {
  if (psi.n_qubits() != c.n_qubits) throw InvalidArgument("state and circuit sizes differ");
  std::vector<int> out;
  for (const auto& m : c.moments)
    for (const auto& op : m) {
      if (op.kind == OpKind::Measure) {
        out.push_back(psi.measure(op.targets[0], rng));
      } else if (op.kind == OpKind::MeasureReset) {
        const int b = psi.measure(op.targets[0], rng);
        out.push_back(b);
        if (b) psi.apply_matrix(pauli_x().matrix, op.targets[0]);
      } else if (op.kind == OpKind::Reset) {
        psi.reset(op.targets[0], rng);
      } else {
        apply_operation(psi, op);
      }
    }
  return out;
}

double simulate_conditioned(const Circuit& c, StateVector& psi, const std::vector<int>& outcomes) {
  if (psi.n_qubits() != c.n_qubits) throw InvalidArgument("state and circuit sizes differ");
  if (outcomes.size() != c.outcome_count()) throw InvalidArgument("record length does not match circuit");
  size_t k = 0;
  double prob = 1.0;
  for (const auto& m : c.moments)
    for (const auto& op : m) {
      if (op.produces_outcome()) {
        const int b = outcomes[k++];
        prob *= psi.project(op.targets[0], b);
        if (op.kind == OpKind::MeasureReset && b) psi.apply_matrix(pauli_x().matrix, op.targets[0]);
      } else {
        apply_operation(psi, op);
      }
    }
  return prob;
}

std::set<int> past_lightcone(const Circuit& c, const std::vector<int>& qubits) {
  std::set<int> cone(qubits.begin(), qubits.end());
  for (auto mt = c.moments.rbegin(); mt != c.moments.rend(); ++mt)
    for (const auto& op : *mt)
      if (op.is_two_qubit() && (cone.count(op.targets[0]) || cone.count(op.targets[1]))) {
        cone.insert(op.targets[0]);
        cone.insert(op.targets[1]);
      }
  return cone;
}

std::set<int> past_lightcone(const Circuit& c, int qubit) { return past_lightcone(c, std::vector<int>{qubit}); }

}  // namespace mipt
