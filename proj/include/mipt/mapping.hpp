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
#include "mipt/sweep.hpp"

namespace mipt {

// Lane groups: qubits sharing a key share a block of consecutive wires, and
// blocks are laid out in ascending key order. Within a block a wire is reused
// once its qubit has been measured and reset.
enum class LaneAxis {
  X,         // key x
  Y,         // key y
  AntiDiag,  // key x - y, for sweeps along x + y
  Distance,  // key = graph distance from the probe
};

struct MappingPlan {
  SweepPlan sweep;
  LaneAxis lanes = LaneAxis::X;
};

struct WireSegment {
  int wire = 0;
  int qubit = 0;  // 2D qubit index
  int first_moment = 0;
  int last_moment = 0;  // moment of its measurement, or the last moment
};

struct MappedCircuit {
  Circuit circuit;
  std::vector<int> outcome_qubits;  // 2D qubit behind each outcome, circuit order
  std::vector<WireSegment> provenance;
  std::vector<int> final_wire;  // per 2D qubit; -1 when measured
  // (r, m): patch r is complete before moment m.
  std::vector<std::pair<int, int>> patch_marks;

  int max_range() const;
  int n_wires() const { return circuit.n_qubits; }
};

// Exact 2+1D -> 1+1D mapping: gates keep their order per qubit, each patch
// qubit becomes a MeasureReset on its wire right after its last gate.
MappedCircuit map_2d_to_1d(const Circuit& c, const Geometry& g, const MappingPlan& plan);

// The chain y = 0 is kept; rows are measured from the far side inwards;
// lanes per x. The chain ends up on one wire per x.
MappingPlan chain_mapping_plan(const Geometry& g);

// Two-column register for long strips: measure along ascending x + y, lanes
// per x - y, no qubit kept.
MappingPlan strip_mapping_plan(const Geometry& g);

// Decoding sweep with the probe alone on wire 0 and other wires ordered by
// distance from it.
MappingPlan decoding_mapping_plan(const Circuit& c, const Geometry& g);

std::vector<int> graph_distances(const Geometry& g, int from);

}  // namespace mipt
