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

#include "mipt/builders.hpp"

#include <sstream>

#include "mipt/duality.hpp"

namespace mipt {

namespace {

std::vector<double> flatten(const Mat4& m) {
  std::vector<double> p;
  p.reserve(32);
  for (int i = 0; i < 16; ++i) {
    p.push_back(m(i / 4, i % 4).real());
    p.push_back(m(i / 4, i % 4).imag());
  }
  return p;
}

std::string describe(const FsimParams& p) {
  std::ostringstream os;
  os.precision(12);
  os << "fsim(" << p.theta << "," << p.phi << "," << p.delta_plus << "," << p.delta_minus << ","
     << p.delta_minus_off << ")";
  return os.str();
}

}  // namespace

Circuit build_shallow_2d(const Geometry& g, int t, double rho, uint64_t seed, const ShallowOptions& opt) {
  if (t < 0 || t > static_cast<int>(g.cycle_colors.size()))
    throw InvalidArgument("depth exceeds the geometry's color schedule");
  if (rho < 0.0 || rho > 1.0) throw InvalidArgument("rho must lie in [0, 1]");
  const Gate2Q ent = fsim(opt.entangler);
  Circuit c;
  c.n_qubits = g.size();
  c.meta = {"shallow_2d", t, rho, seed, describe(opt.entangler)};
  auto sq_layer = [&](int cycle) {
    Moment m;
    for (int q = 0; q < g.size(); ++q) {
      Rng r(derive_seed(seed, {1, static_cast<uint64_t>(cycle), static_cast<uint64_t>(q)}));
      m.push_back(Operation::unitary(random_sq_gate(r), q));
    }
    return m;
  };
  for (int cycle = 0; cycle < t; ++cycle) {
    c.moments.push_back(sq_layer(cycle));
    Moment layer;
    for (size_t e = 0; e < g.edges.size(); ++e) {
      if (g.edges[e].color != g.cycle_colors[cycle]) continue;
      Rng r(derive_seed(seed, {2, static_cast<uint64_t>(cycle), e}));
      if (r.uniform() < rho) layer.push_back(Operation::unitary(ent, g.edges[e].a, g.edges[e].b));
    }
    c.moments.push_back(std::move(layer));
  }
  if (opt.final_sq_layer && t > 0) c.moments.push_back(sq_layer(t));
  return c;
}

DualPair build_1d_dual_pair(int n, int t, double theta, uint64_t seed) {
  if (n < 4 || n % 2 != 0) throw InvalidArgument("n must be even and at least 4");
  if (t < 2) throw InvalidArgument("t must be at least 2");
  if (!(theta > 0.0 && theta <= kPi / 2.0 + 1e-12)) throw InvalidArgument("theta must lie in (0, pi/2]");
  DualPair p;
  p.n = n;
  p.wires = t;
  p.steps = n - 1;
  p.theta = theta;
  const int W = t, S = n - 1;
  for (int w = 0; w < W; ++w) p.h.push_back(Rng(derive_seed(seed, {3, static_cast<uint64_t>(w)})).uniform(0.0, 2.0));
  const Gate2Q f = fsim(theta, 2.0 * theta);
  auto has_gate = [&](int w, int s) { return ((W - 2 - w) % 2 + 2) % 2 == s % 2; };
  auto composite = [&](int w) {
    const Mat4 zz = kron(z_pow(p.h[w]).matrix, z_pow(p.h[w + 1]).matrix);
    return Mat4(f.matrix * zz);
  };

  // Dual unitary circuit.
  Circuit& d = p.dual_unitary;
  d.n_qubits = W;
  d.meta = {"dual_unitary", S, 1.0, seed, describe({theta, 2.0 * theta})};
  for (int s = 0; s < S; ++s) {
    Moment zm, fm;
    for (int w = 0; w + 1 < W; ++w) {
      if (!has_gate(w, s)) continue;
      zm.push_back(Operation::unitary(z_pow(p.h[w]), w));
      zm.push_back(Operation::unitary(z_pow(p.h[w + 1]), w + 1));
      fm.push_back(Operation::unitary(f, w, w + 1));
    }
    d.moments.push_back(std::move(zm));
    d.moments.push_back(std::move(fm));
  }
  Moment meas;
  for (int w = 0; w + 1 < W; ++w) meas.push_back(Operation::measure(w));
  d.moments.push_back(std::move(meas));

  // Monitored circuit.
  Circuit& m = p.monitored;
  m.n_qubits = n;
  m.meta = {"monitored", W - 1, 1.0, seed, describe({theta, 2.0 * theta})};
  const Gate1Q had = hadamard();
  {
    // Slice 0: idle steps of wire 0 tie legs (s, s+1) together.
    Moment hs, ms, cs;
    for (int s = 0; s < S; ++s) {
      if (has_gate(0, s)) continue;
      if (s == 0) continue;  // both legs pinned to |0>
      if (s + 1 == S) {
        hs.push_back(Operation::unitary(had, S));
        ms.push_back(Operation::measure(S));
        cs.push_back(Operation::unitary(cnot(), S, S - 1));
      } else {
        hs.push_back(Operation::unitary(had, s));
        cs.push_back(Operation::unitary(cnot(), s, s + 1));
      }
    }
    for (Moment* mm : {&hs, &ms, &cs})
      if (!mm->empty()) m.moments.push_back(std::move(*mm));
  }
  Eigen::Matrix2cd keep0 = Eigen::Matrix2cd::Zero();
  keep0(0, 0) = 1.0;
  for (int w = 0; w + 1 < W; ++w) {
    const bool touches_last = has_gate(w, S - 1);
    const bool touches_first = has_gate(w, 0);
    if (touches_last) {
      // Input leg S of wire w is pinned to its measured bit b_w.
      m.moments.push_back({Operation::unitary(had, S)});
      m.moments.push_back({Operation::measure(S)});
    }
    const DualDecomposition dec = polar_decompose(spacetime_dual(composite(w)));
    const bool weak = (dec.h - 0.5 * Mat4::Identity()).cwiseAbs().maxCoeff() > 1e-12;
    Moment hm, vm;
    for (int s = 0; s < S; ++s) {
      if (!has_gate(w, s)) continue;
      if (weak) hm.push_back(Operation::kraus(dec.h, {s, s + 1}, "weak_meas"));
      vm.push_back(Operation::unitary(Gate2Q{dec.v, "u2", flatten(dec.v)}, s, s + 1));
    }
    if (!hm.empty()) m.moments.push_back(std::move(hm));
    m.moments.push_back(std::move(vm));
    if (w + 1 < W - 1) {
      Moment bm;
      if (touches_first) bm.push_back(Operation::kraus(keep0, {0}, "boundary"));
      if (touches_last) bm.push_back(Operation::measure_reset(S));
      if (!bm.empty()) m.moments.push_back(std::move(bm));
    }
  }
  d.validate();
  m.validate();
  return p;
}

Circuit build_teleport_harness(const Circuit& dual) {
  const int W = dual.n_qubits, S = dual.meta.depth, n = S + 1;
  if (static_cast<int>(dual.moments.size()) != 2 * S + 1) throw InvalidArgument("not a dual brickwork circuit");
  const int out = W - 1;
  auto anc = [&](int k) { return W + k; };
  Circuit c;
  c.n_qubits = W + n;
  c.meta = dual.meta;
  c.meta.family = "teleport_harness";

  Moment hs{Operation::unitary(hadamard(), out)}, cs{Operation::unitary(cnot(), out, anc(0))};
  for (int s = 1; s + 1 < S; s += 2) {
    hs.push_back(Operation::unitary(hadamard(), anc(s)));
    cs.push_back(Operation::unitary(cnot(), anc(s), anc(s + 1)));
  }
  c.moments.push_back(std::move(hs));
  c.moments.push_back(std::move(cs));
  for (int s = 0; s < S; ++s) {
    c.moments.push_back(dual.moments[2 * s]);
    Moment fm = dual.moments[2 * s + 1];
    if (s % 2 == 1) {
      for (const auto& op : fm)
        for (int q : op.targets)
          if (q == out) throw InvalidArgument("output wire is not idle at an odd step");
      fm.push_back(Operation::unitary(swap_gate(), out, anc(s)));
    }
    c.moments.push_back(std::move(fm));
  }
  c.moments.push_back({Operation::unitary(swap_gate(), out, anc(S))});
  c.moments.push_back(dual.moments.back());
  c.validate();
  return c;
}

double effective_measurement_rate(int m, int l, int t) {
  if (m < 0 || l < 0 || t < 1 || m + l == 0) throw InvalidArgument("invalid counts for measurement rate");
  return static_cast<double>(m) / (static_cast<double>(m + l) * t);
}

std::vector<int> most_probable_record(const DualPair& p) {
  StateVector psi(p.dual_unitary.n_qubits, Backend::Serial);
  std::vector<int> measured;
  for (const auto& m : p.dual_unitary.moments)
    for (const auto& op : m) {
      if (op.produces_outcome())
        measured.push_back(op.targets[0]);
      else
        apply_operation(psi, op);
    }
  return postselect_most_probable(psi, measured);
}

}  // namespace mipt
