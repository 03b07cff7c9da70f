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

#include "mipt/mapping.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>
#include <tuple>

namespace mipt {

std::vector<int> graph_distances(const Geometry& g, int from) {
  const auto adj = g.adjacency();
  std::vector<int> d(g.size(), -1);
  std::deque<int> q{from};
  d[from] = 0;
  while (!q.empty()) {
    const int u = q.front();
    q.pop_front();
    for (int w : adj[u])
      if (d[w] < 0) d[w] = d[u] + 1, q.push_back(w);
  }
  return d;
}

int MappedCircuit::max_range() const {
  int r = 0;
  for (const auto& m : circuit.moments)
    for (const auto& op : m)
      if (op.is_two_qubit()) r = std::max(r, std::abs(op.targets[0] - op.targets[1]));
  return r;
}

MappedCircuit map_2d_to_1d(const Circuit& c, const Geometry& g, const MappingPlan& plan) {
  if (c.n_qubits != g.size()) throw InvalidArgument("circuit and geometry sizes differ");
  for (const auto& e : g.edges) {
    const int dx = std::abs(g.qubits[e.a].first - g.qubits[e.b].first);
    const int dy = std::abs(g.qubits[e.a].second - g.qubits[e.b].second);
    if (dx + dy != 1) throw InvalidArgument("mapping needs a square-grid geometry");
  }
  const SweepSchedule sched = lightcone_sweep(c, plan.sweep);
  const int n = c.n_qubits;

  std::vector<int> dist;
  if (plan.lanes == LaneAxis::Distance) dist = graph_distances(g, g.probe);
  auto key = [&](int q) {
    const auto [x, y] = g.qubits[q];
    switch (plan.lanes) {
      case LaneAxis::X: return x;
      case LaneAxis::Y: return y;
      case LaneAxis::AntiDiag: return x - y;
      case LaneAxis::Distance: return dist[q];
    }
    return 0;
  };

  // Pass 1: lanes needed per key.
  std::map<int, int> live, need;
  for (const auto& ev : sched.events) {
    if (ev.kind == SweepEventKind::Add) need[key(ev.qubit)] = std::max(need[key(ev.qubit)], ++live[key(ev.qubit)]);
    if (ev.kind == SweepEventKind::Finish) --live[key(ev.qubit)];
  }
  std::map<int, int> offset;
  int wires = 0;
  for (const auto& [k, cnt] : need) offset[k] = wires, wires += cnt;

  MappedCircuit out;
  out.circuit.n_qubits = wires;
  out.circuit.meta = c.meta;
  out.circuit.meta.family = "mapped";
  out.final_wire.assign(n, -1);

  // Pass 2: lane assignment and as-soon-as-possible moment packing. A patch
  // mark is a barrier: later ops never move in front of it.
  std::map<int, std::set<int>> free_lanes;
  for (const auto& [k, cnt] : need)
    for (int l = 0; l < cnt; ++l) free_lanes[k].insert(l);
  std::vector<int> wire_of(n, -1), seg_of(n, -1);
  std::vector<int> busy_until(wires, 0);  // first moment index free on the wire
  int barrier = 0;
  // (moment, slot, qubit) per measurement; packing may reorder them.
  std::vector<std::tuple<int, int, int>> outcomes;
  auto place = [&](Operation op) {
    int t = barrier;
    for (int w : op.targets) t = std::max(t, busy_until[w]);
    if (t >= static_cast<int>(out.circuit.moments.size())) out.circuit.moments.resize(t + 1);
    out.circuit.moments[t].push_back(std::move(op));
    for (int w : out.circuit.moments[t].back().targets) busy_until[w] = t + 1;
    return t;
  };
  for (const auto& ev : sched.events) {
    switch (ev.kind) {
      case SweepEventKind::Add: {
        auto& fl = free_lanes[key(ev.qubit)];
        const int lane = *fl.begin();
        fl.erase(fl.begin());
        const int w = offset[key(ev.qubit)] + lane;
        wire_of[ev.qubit] = w;
        seg_of[ev.qubit] = static_cast<int>(out.provenance.size());
        out.provenance.push_back({w, ev.qubit, std::max(barrier, busy_until[w]), -1});
        break;
      }
      case SweepEventKind::Gate: {
        Operation op = c.moments[ev.moment][ev.op];
        for (int& t : op.targets) t = wire_of[t];
        place(std::move(op));
        break;
      }
      case SweepEventKind::Finish: {
        const int w = wire_of[ev.qubit];
        const int t = place(Operation::measure_reset(w));
        outcomes.emplace_back(t, static_cast<int>(out.circuit.moments[t].size()) - 1, ev.qubit);
        out.provenance[seg_of[ev.qubit]].last_moment = t;
        free_lanes[key(ev.qubit)].insert(w - offset[key(ev.qubit)]);
        wire_of[ev.qubit] = -1;
        break;
      }
      case SweepEventKind::PatchDone:
        barrier = static_cast<int>(out.circuit.moments.size());
        out.patch_marks.emplace_back(ev.r, barrier);
        break;
    }
  }
  std::sort(outcomes.begin(), outcomes.end());
  for (const auto& o : outcomes) out.outcome_qubits.push_back(std::get<2>(o));
  const int last = std::max(0, static_cast<int>(out.circuit.moments.size()) - 1);
  for (int q = 0; q < n; ++q) {
    out.final_wire[q] = wire_of[q];
    if (seg_of[q] >= 0 && out.provenance[seg_of[q]].last_moment < 0) out.provenance[seg_of[q]].last_moment = last;
  }
  out.circuit.validate();
  return out;
}

MappingPlan chain_mapping_plan(const Geometry& g) {
  int ymax = 0;
  for (const auto& q : g.qubits) ymax = std::max(ymax, q.second);
  MappingPlan p;
  p.lanes = LaneAxis::X;
  std::vector<int> acc;
  for (int y = ymax; y >= 1; --y) {
    for (int q = 0; q < g.size(); ++q)
      if (g.qubits[q].second == y) acc.push_back(q);
    p.sweep.patches.push_back(acc);
  }
  p.sweep.add_rest_at_end = true;
  return p;
}

MappingPlan strip_mapping_plan(const Geometry& g) {
  int smax = -1 << 30, smin = 1 << 30;
  for (const auto& [x, y] : g.qubits) smax = std::max(smax, x + y), smin = std::min(smin, x + y);
  MappingPlan p;
  p.lanes = LaneAxis::AntiDiag;
  std::vector<int> acc;
  for (int s = smin; s <= smax; ++s) {
    for (int q = 0; q < g.size(); ++q)
      if (g.qubits[q].first + g.qubits[q].second == s) acc.push_back(q);
    p.sweep.patches.push_back(acc);
  }
  return p;
}

MappingPlan decoding_mapping_plan(const Circuit& c, const Geometry& g) {
  MappingPlan p;
  p.sweep = decoding_plan(c, g);
  p.lanes = LaneAxis::Distance;
  return p;
}

}  // namespace mipt
