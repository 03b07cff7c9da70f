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

#include "mipt/circuit.hpp"
#include "mipt/geometry.hpp"

namespace mipt {

// Lightcone sweep over a shallow circuit. An active set A of qubits is
// simulated; qubits enter A in |0>, gates run as soon as all their targets are
// in A and every earlier gate on those targets has run, and a qubit of the
// current patch leaves A (is measured) once its last gate has run.
//
// To complete patch D_r the sweep repeatedly picks the unfinished patch qubit
// whose past lightcone contains the fewest qubits not yet added (ties: lowest
// index) and adds that lightcone.
struct SweepPlan {
  std::vector<int> initial;
  std::vector<std::vector<int>> patches;  // cumulative; patches[0] may be empty
  // Bring every remaining qubit in after the last patch and finish all gates.
  bool add_rest_at_end = false;
};

enum class SweepEventKind { Add, Gate, Finish, PatchDone };

struct SweepEvent {
  SweepEventKind kind;
  int qubit = -1;   // Add, Finish
  int moment = -1;  // Gate
  int op = -1;      // Gate
  int r = -1;       // PatchDone
};

struct SweepSchedule {
  std::vector<SweepEvent> events;
  int peak_active = 0;
  int n_qubits = 0;
};

SweepSchedule lightcone_sweep(const Circuit& c, const SweepPlan& plan);

// Decoding order: start from the probe's past lightcone, then the geometry's
// patches.
SweepPlan decoding_plan(const Circuit& c, const Geometry& g);

}  // namespace mipt
