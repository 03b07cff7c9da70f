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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "mipt/builders.hpp"
#include "mipt/mapping.hpp"
#include "mipt/sweep.hpp"

using namespace mipt;

namespace {

struct Comparison {
  double fidelity = 0.0;
  size_t kept = 0;
};

// Direct oracle: full 2D simulation, then projective readout of every qubit
// the mapping measures. The mapped circuit is replayed on the same record.
StateVector run_direct(const Circuit& c2d) {
  StateVector psi(c2d.n_qubits);
  Rng unused(0);
  simulate(c2d, psi, unused);
  return psi;
}

Comparison compare_once(const Circuit& c2d, const StateVector& evolved, const MappedCircuit& mc, uint64_t seed) {
  StateVector direct = evolved;
  Rng rng(seed);
  std::vector<int> record;
  for (int q : mc.outcome_qubits) record.push_back(direct.measure(q, rng));

  StateVector mapped(mc.n_wires(), Backend::Serial);
  simulate_conditioned(mc.circuit, mapped, record);

  std::vector<int> kept, wires;
  for (int q = 0; q < c2d.n_qubits; ++q)
    if (mc.final_wire[q] >= 0) kept.push_back(q), wires.push_back(mc.final_wire[q]);
  const DensityMatrix a = reduced_density(direct, kept), b = reduced_density(mapped, wires);
  return {(a.elems * b.elems).trace().real(), kept.size()};
}

std::vector<std::pair<int, int>> rect(int nx, int ny) {
  std::vector<std::pair<int, int>> s;
  for (int y = 0; y < ny; ++y)
    for (int x = 0; x < nx; ++x) s.emplace_back(x, y);
  return s;
}

}  // namespace

TEST(Mapping, Grid19ChainEquivalence) {
  const Geometry g = builtin_geometry("grid19");
  for (int t = 1; t <= 3; ++t) {
    const Circuit c = build_shallow_2d(g, t, 1.0, 100 + t);
    const MappedCircuit mc = map_2d_to_1d(c, g, chain_mapping_plan(g));
    const StateVector evolved = run_direct(c);
    for (int rec = 0; rec < 20; ++rec) {
      const Comparison r = compare_once(c, evolved, mc, derive_seed(5, {static_cast<uint64_t>(t), static_cast<uint64_t>(rec)}));
      EXPECT_GT(r.fidelity, 1.0 - 1e-9) << "t=" << t << " record " << rec;
    }
  }
}

TEST(Mapping, Grid19Shape) {
  const Geometry g = builtin_geometry("grid19");
  const Circuit c = build_shallow_2d(g, 3, 1.0, 7);
  const MappedCircuit mc = map_2d_to_1d(c, g, chain_mapping_plan(g));
  EXPECT_EQ(mc.n_wires(), 14);
  EXPECT_EQ(mc.outcome_qubits.size(), 12u);
  int kept = 0;
  for (int q = 0; q < g.size(); ++q) {
    if (mc.final_wire[q] < 0) continue;
    ++kept;
    EXPECT_EQ(g.qubits[q].second, 0);
  }
  EXPECT_EQ(kept, 7);
  EXPECT_EQ(mc.circuit.count(OpKind::MeasureReset), 12u);
  EXPECT_EQ(mc.circuit.two_qubit_gate_count(), c.two_qubit_gate_count());
}

TEST(Mapping, ProvenanceCoversEachQubitOnce) {
  for (const char* name : {"grid19", "n24"}) {
    const Geometry g = builtin_geometry(name);
    const Circuit c = build_shallow_2d(g, 5, 0.8, 3);
    for (const MappingPlan& plan : {chain_mapping_plan(g), strip_mapping_plan(g), decoding_mapping_plan(c, g)}) {
      const MappedCircuit mc = map_2d_to_1d(c, g, plan);
      std::vector<int> seen(g.size(), 0);
      for (const auto& seg : mc.provenance) {
        ++seen[seg.qubit];
        EXPECT_LE(seg.first_moment, seg.last_moment);
        EXPECT_GE(seg.wire, 0);
        EXPECT_LT(seg.wire, mc.n_wires());
      }
      for (int q = 0; q < g.size(); ++q) EXPECT_EQ(seen[q], 1) << name << " qubit " << q;
      // Segments sharing a wire never overlap in time.
      for (size_t i = 0; i < mc.provenance.size(); ++i)
        for (size_t j = i + 1; j < mc.provenance.size(); ++j) {
          const auto &a = mc.provenance[i], &b = mc.provenance[j];
          if (a.wire != b.wire) continue;
          EXPECT_TRUE(a.last_moment < b.first_moment || b.last_moment < a.first_moment);
        }
    }
  }
}

TEST(Mapping, StripRangeAtDepthFive) {
  std::vector<EdgeColor> eight;
  for (int k = 0; k < 8; ++k) eight.push_back(static_cast<EdgeColor>(k % 4));
  for (int len : {8, 16, 30}) {
    const Geometry g = make_grid_geometry("strip", rect(len, 2), {0, 0}, eight);
    const Circuit c = build_shallow_2d(g, 5, 1.0, 9);
    const MappedCircuit mc = map_2d_to_1d(c, g, strip_mapping_plan(g));
    EXPECT_LE(mc.max_range(), 3) << "length " << len;
    EXPECT_EQ(mc.outcome_qubits.size(), static_cast<size_t>(g.size()));
  }
}

TEST(Mapping, StripEquivalence) {
  std::vector<EdgeColor> eight;
  for (int k = 0; k < 8; ++k) eight.push_back(static_cast<EdgeColor>(k % 4));
  const Geometry g = make_grid_geometry("strip", rect(8, 2), {0, 0}, eight);
  const Circuit c = build_shallow_2d(g, 5, 1.0, 12);
  MappingPlan plan = strip_mapping_plan(g);
  plan.sweep.patches.pop_back();  // keep the last anti-diagonal to compare states
  plan.sweep.add_rest_at_end = true;
  const MappedCircuit mc = map_2d_to_1d(c, g, plan);
  for (int rec = 0; rec < 5; ++rec) {
    const Comparison r = compare_once(c, run_direct(c), mc, 77 + rec);
    EXPECT_GT(r.kept, 0u);
    EXPECT_GT(r.fidelity, 1.0 - 1e-9);
  }
}

TEST(Mapping, DecodingPlanPutsProbeOnWireZero) {
  const Geometry g = builtin_geometry("n12");
  const Circuit c = build_shallow_2d(g, 5, 1.0, 2);
  const MappedCircuit mc = map_2d_to_1d(c, g, decoding_mapping_plan(c, g));
  EXPECT_EQ(mc.final_wire[g.probe], 0);
  for (int q = 0; q < g.size(); ++q)
    if (q != g.probe) EXPECT_EQ(mc.final_wire[q], -1);
  EXPECT_EQ(static_cast<int>(mc.patch_marks.size()), g.r_max() + 1);
  for (int rec = 0; rec < 5; ++rec) EXPECT_GT(compare_once(c, run_direct(c), mc, 300 + rec).fidelity, 1.0 - 1e-9);
}

TEST(Mapping, RejectsSizeMismatch) {
  const Geometry g = builtin_geometry("n12");
  const Circuit c = build_shallow_2d(builtin_geometry("n24"), 2, 1.0, 1);
  EXPECT_THROW(map_2d_to_1d(c, g, chain_mapping_plan(g)), InvalidArgument);
}

TEST(Sweep, PeakNeverExceedsSize) {
  for (const auto& name : builtin_geometry_names()) {
    const Geometry g = builtin_geometry(name);
    const Circuit c = build_shallow_2d(g, 5, 1.0, 4);
    const SweepSchedule s = lightcone_sweep(c, decoding_plan(c, g));
    EXPECT_LE(s.peak_active, g.size());
    // Every gate runs once.
    size_t gates = 0;
    for (const auto& ev : s.events) gates += ev.kind == SweepEventKind::Gate;
    size_t ops = 0;
    for (const auto& m : c.moments) ops += m.size();
    EXPECT_EQ(gates, ops) << name;
  }
}

TEST(Sweep, PatchesFinishInOrder) {
  const Geometry g = builtin_geometry("n24");
  const Circuit c = build_shallow_2d(g, 5, 0.7, 6);
  const SweepSchedule s = lightcone_sweep(c, decoding_plan(c, g));
  std::vector<bool> finished(g.size(), false);
  int next_r = 0;
  for (const auto& ev : s.events) {
    if (ev.kind == SweepEventKind::Finish) finished[ev.qubit] = true;
    if (ev.kind == SweepEventKind::PatchDone) {
      EXPECT_EQ(ev.r, next_r++);
      for (int q : g.patches[ev.r]) EXPECT_TRUE(finished[q]) << "r=" << ev.r << " q=" << q;
      EXPECT_FALSE(finished[g.probe]);
    }
  }
  EXPECT_EQ(next_r, g.r_max() + 1);
}
