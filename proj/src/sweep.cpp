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

#include "mipt/sweep.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace mipt {

namespace {

struct OpRef {
  int moment, op;
  bool operator==(const OpRef&) const = default;
};

}  // namespace

SweepSchedule lightcone_sweep(const Circuit& c, const SweepPlan& plan) {
  const int n = c.n_qubits;
  std::vector<std::deque<OpRef>> queue(n);
  for (int m = 0; m < static_cast<int>(c.moments.size()); ++m)
    for (int k = 0; k < static_cast<int>(c.moments[m].size()); ++k) {
      const Operation& op = c.moments[m][k];
      if (op.kind != OpKind::Unitary && op.kind != OpKind::Kraus)
        throw InvalidArgument("lightcone sweep needs a circuit of gates only");
      for (int q : op.targets) queue[q].push_back({m, k});
    }

  std::vector<std::vector<int>> cone(n);
  for (int q = 0; q < n; ++q) {
    const auto s = past_lightcone(c, q);
    cone[q].assign(s.begin(), s.end());
  }

  enum class St { Idle, Active, Done };
  std::vector<St> st(n, St::Idle);
  SweepSchedule out;
  out.n_qubits = n;
  int active = 0;

  auto add = [&](int q) {
    if (st[q] != St::Idle) return;
    st[q] = St::Active;
    ++active;
    out.events.push_back({SweepEventKind::Add, q});
    out.peak_active = std::max(out.peak_active, active);
  };
  auto evolve = [&] {
    bool progress = true;
    while (progress) {
      progress = false;
      for (int q = 0; q < n; ++q) {
        if (st[q] != St::Active || queue[q].empty()) continue;
        const OpRef ref = queue[q].front();
        const Operation& op = c.moments[ref.moment][ref.op];
        bool ready = true;
        for (int t : op.targets) ready = ready && st[t] == St::Active && queue[t].front() == ref;
        if (!ready) continue;
        for (int t : op.targets) queue[t].pop_front();
        out.events.push_back({SweepEventKind::Gate, -1, ref.moment, ref.op});
        progress = true;
      }
    }
  };

  for (int q : plan.initial) add(q);
  evolve();
  for (size_t r = 0; r < plan.patches.size(); ++r) {
    std::vector<bool> in_patch(n, false);
    for (int q : plan.patches[r]) in_patch[q] = true;
    for (;;) {
      bool pending = false;
      for (int q = 0; q < n; ++q) {
        if (!in_patch[q] || st[q] == St::Done) continue;
        if (st[q] == St::Active && queue[q].empty()) {
          st[q] = St::Done;
          --active;
          out.events.push_back({SweepEventKind::Finish, q});
        } else {
          pending = true;
        }
      }
      if (!pending) break;
      int best = -1;
      size_t best_cost = 0;
      for (int q = 0; q < n; ++q) {
        if (!in_patch[q] || st[q] == St::Done) continue;
        size_t cost = 0;
        for (int p : cone[q]) cost += st[p] == St::Idle;
        if (best < 0 || cost < best_cost) best = q, best_cost = cost;
      }
      if (best_cost == 0) throw Error("lightcone sweep stalled on qubit " + std::to_string(best));
      for (int p : cone[best]) add(p);
      evolve();
    }
    out.events.push_back({SweepEventKind::PatchDone, -1, -1, -1, static_cast<int>(r)});
  }
  if (plan.add_rest_at_end) {
    for (int q = 0; q < n; ++q) add(q);
    evolve();
    for (int q = 0; q < n; ++q)
      if (!queue[q].empty()) throw Error("lightcone sweep left gates unapplied");
  }
  return out;
}

SweepPlan decoding_plan(const Circuit& c, const Geometry& g) {
  if (c.n_qubits != g.size()) throw InvalidArgument("circuit and geometry sizes differ");
  if (g.patches.empty()) throw InvalidArgument("geometry carries no decoding patches");
  SweepPlan p;
  const auto cone = past_lightcone(c, g.probe);
  p.initial.assign(cone.begin(), cone.end());
  p.patches = g.patches;
  return p;
}

}  // namespace mipt
