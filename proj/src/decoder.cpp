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

#include "mipt/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "mipt/kernels.hpp"

namespace mipt {

namespace {

inline uint64_t insert_bit(uint64_t i, int pos, uint64_t bit) {
  const uint64_t lo = i & ((uint64_t{1} << pos) - 1);
  return ((i >> pos) << (pos + 1)) | (bit << pos) | lo;
}

const Gate1Q& pauli_by_index(int k) {
  static const Gate1Q p[3] = {pauli_x(), pauli_y(), pauli_z()};
  return p[k];
}

}  // namespace

ActiveRegister::ActiveRegister(int n_qubits) : slot_of_(n_qubits, -1) {}

int ActiveRegister::slot(int q) const {
  const int s = slot_of_.at(q);
  if (s < 0) throw Error("qubit " + std::to_string(q) + " is not active");
  return s;
}

void ActiveRegister::add(int q) {
  if (slot_of_.at(q) >= 0) throw Error("qubit " + std::to_string(q) + " added twice");
  slot_of_[q] = size();
  qubit_at_.push_back(q);
  amps_.resize(amps_.size() * 2, cplx(0.0));
  peak_ = std::max(peak_, size());
}

void ActiveRegister::apply(const Operation& op) {
  const int n = size();
  if (op.is_two_qubit()) {
    cplx m[16];
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) m[4 * r + c] = op.matrix(r, c);
    kernels::omp::apply_2q(amps_.data(), n, slot(op.targets[0]), slot(op.targets[1]), m);
  } else {
    const cplx m[4] = {op.matrix(0, 0), op.matrix(0, 1), op.matrix(1, 0), op.matrix(1, 1)};
    kernels::omp::apply_1q(amps_.data(), n, slot(op.targets[0]), m);
  }
  if (op.kind == OpKind::Kraus) {
    const double nn = kernels::omp::norm2(amps_.data(), n);
    if (nn < kDegenerateThreshold) throw DegenerateBranch("kraus operator annihilated the state");
    const double s = 1.0 / std::sqrt(nn);
    for (auto& a : amps_) a *= s;
  }
}

double ActiveRegister::prob_one(int q) const { return kernels::omp::prob_one(amps_.data(), size(), slot(q)); }

double ActiveRegister::expect_z(int q) const { return 1.0 - 2.0 * prob_one(q); }

double ActiveRegister::finish(int q, int bit) {
  const int s = slot(q);
  const double p1 = prob_one(q);
  const double p = bit ? p1 : 1.0 - p1;
  if (p < kDegenerateThreshold)
    throw DegenerateBranch("record bit " + std::to_string(bit) + " on qubit " + std::to_string(q) +
                           " has probability " + std::to_string(p));
  const size_t half = amps_.size() / 2;
  const double scale = 1.0 / std::sqrt(p);
  std::vector<cplx> next(half);
  for (size_t i = 0; i < half; ++i) next[i] = amps_[insert_bit(i, s, bit)] * scale;
  amps_.swap(next);
  qubit_at_.erase(qubit_at_.begin() + s);
  slot_of_[q] = -1;
  for (int k = s; k < size(); ++k) slot_of_[qubit_at_[k]] = k;
  return p;
}

SweepTrace conditional_bloch_sweep(const Circuit& c, const SweepSchedule& sched, int probe,
                                   const std::vector<int>& bits) {
  if (static_cast<int>(bits.size()) != c.n_qubits) throw InvalidArgument("record length does not match circuit");
  ActiveRegister reg(c.n_qubits);
  SweepTrace tr;
  for (const auto& ev : sched.events) {
    switch (ev.kind) {
      case SweepEventKind::Add: reg.add(ev.qubit); break;
      case SweepEventKind::Gate: reg.apply(c.moments[ev.moment][ev.op]); break;
      case SweepEventKind::Finish:
        if (ev.qubit == probe) throw InvalidArgument("the probe cannot be part of a patch");
        reg.finish(ev.qubit, bits[ev.qubit]);
        break;
      case SweepEventKind::PatchDone: {
        const double a = reg.expect_z(probe);
        tr.a_z.push_back(a);
        tr.tau.push_back(sign_of(a));
        break;
      }
    }
  }
  tr.peak_active = reg.peak();
  return tr;
}

std::pair<std::vector<int>, SweepTrace> sample_along_sweep(const Circuit& c, const SweepSchedule& sched, int probe,
                                                           Rng& rng) {
  ActiveRegister reg(c.n_qubits);
  SweepTrace tr;
  std::vector<int> bits(c.n_qubits, -1);
  for (const auto& ev : sched.events) {
    switch (ev.kind) {
      case SweepEventKind::Add: reg.add(ev.qubit); break;
      case SweepEventKind::Gate: reg.apply(c.moments[ev.moment][ev.op]); break;
      case SweepEventKind::Finish: {
        const int b = rng.uniform() < reg.prob_one(ev.qubit) ? 1 : 0;
        reg.finish(ev.qubit, b);
        bits[ev.qubit] = b;
        break;
      }
      case SweepEventKind::PatchDone: {
        const double a = reg.expect_z(probe);
        tr.a_z.push_back(a);
        tr.tau.push_back(sign_of(a));
        break;
      }
    }
  }
  bits[probe] = rng.uniform() < reg.prob_one(probe) ? 1 : 0;
  for (int q = 0; q < c.n_qubits; ++q)
    if (bits[q] < 0) throw Error("sweep left qubit " + std::to_string(q) + " unmeasured");
  tr.peak_active = reg.peak();
  return {bits, tr};
}

Circuit noisy_copy(const Circuit& c, double eps, Rng& rng) {
  if (eps < 0.0) throw InvalidArgument("epsilon must be non-negative");
  // A uniformly random Pauli with probability 3/4 (1 - e^{-eps}) scales every
  // Pauli expectation by e^{-eps}.
  const double p = 0.75 * (1.0 - std::exp(-eps));
  Circuit out;
  out.n_qubits = c.n_qubits;
  out.meta = c.meta;
  auto noise_moment = [&] {
    Moment m;
    for (int q = 0; q < c.n_qubits; ++q)
      if (rng.uniform() < p) m.push_back(Operation::unitary(pauli_by_index(static_cast<int>(rng.below(3))), q));
    return m;
  };
  for (const auto& m : c.moments) {
    out.moments.push_back(m);
    const bool entangling = std::any_of(m.begin(), m.end(), [](const Operation& op) { return op.is_two_qubit(); });
    if (entangling) out.moments.push_back(noise_moment());
  }
  out.moments.push_back(noise_moment());
  return out;
}

std::vector<ShotRecord> run_shots(const Circuit& c, const Geometry& g, int circuit_id, int n_shots, uint64_t seed,
                                  std::optional<NoiseModel> noise) {
  const SweepSchedule sched = lightcone_sweep(c, decoding_plan(c, g));
  std::vector<ShotRecord> out;
  out.reserve(n_shots);
  for (int s = 0; s < n_shots; ++s) {
    const uint64_t shot_seed = derive_seed(seed, {static_cast<uint64_t>(circuit_id), static_cast<uint64_t>(s)});
    Rng rng(shot_seed);
    std::vector<int> bits;
    if (noise && noise->epsilon > 0.0) {
      const Circuit nc = noisy_copy(c, noise->epsilon, rng);
      bits = sample_along_sweep(nc, lightcone_sweep(nc, decoding_plan(nc, g)), g.probe, rng).first;
    } else {
      bits = sample_along_sweep(c, sched, g.probe, rng).first;
    }
    ShotRecord r{circuit_id, shot_seed, {}};
    for (int b : bits) r.bits.push_back(signed_bit(b));
    out.push_back(std::move(r));
  }
  return out;
}

DecodedShot decode_shot(const Circuit& c, const SweepSchedule& sched, int probe, const ShotRecord& shot) {
  DecodedShot d;
  d.circuit_id = shot.circuit_id;
  d.z_p = shot.bits.at(probe);
  std::vector<int> bits;
  for (int z : shot.bits) {
    if (z != 1 && z != -1) throw InvalidArgument("record bits must be +1 or -1");
    bits.push_back(binary_bit(z));
  }
  try {
    const SweepTrace tr = conditional_bloch_sweep(c, sched, probe, bits);
    d.tau = tr.tau;
    d.a_z = tr.a_z;
  } catch (const DegenerateBranch&) {
    d.rejected = true;
  }
  return d;
}

double s_proxy_of(double z) { return -std::log2((1.0 + z * z) / 2.0); }

DecodeResult zeta(const std::vector<DecodedShot>& shots, int n_boot, uint64_t seed) {
  DecodeResult res;
  int R = -1;
  for (const auto& s : shots)
    if (!s.rejected) {
      if (R < 0) R = static_cast<int>(s.tau.size());
      if (static_cast<int>(s.tau.size()) != R) throw InvalidArgument("shots disagree on the number of radii");
    }
  if (R <= 0) throw InvalidArgument("no decodable shots");
  res.r_max = R - 1;

  // Per-circuit sums, in ascending circuit order.
  struct Sums {
    double k = 0;
    std::vector<double> zt, az;
  };
  std::map<int, Sums> per;
  for (const auto& s : shots) {
    if (s.rejected) {
      ++res.rejected;
      continue;
    }
    auto& p = per[s.circuit_id];
    if (p.zt.empty()) p.zt.assign(R, 0.0), p.az.assign(R, 0.0);
    p.k += 1;
    for (int r = 0; r < R; ++r) {
      p.zt[r] += s.z_p * s.tau[r];
      p.az[r] += std::abs(s.a_z[r]);
    }
  }
  std::vector<const Sums*> circ;
  for (const auto& [id, s] : per) circ.push_back(&s);
  res.circuits = circ.size();
  res.shots = shots.size() - res.rejected;

  auto stats = [&](const std::vector<int>& pick, std::vector<double>& z, std::vector<double>& zs) {
    z.assign(R, 0.0);
    zs.assign(R, 0.0);
    double k = 0;
    for (int i : pick) {
      k += circ[i]->k;
      for (int r = 0; r < R; ++r) z[r] += circ[i]->zt[r], zs[r] += circ[i]->az[r];
    }
    for (int r = 0; r < R; ++r) z[r] *= 2.0 / k, zs[r] *= 2.0 / k;
  };
  std::vector<int> all(circ.size());
  for (size_t i = 0; i < circ.size(); ++i) all[i] = static_cast<int>(i);
  stats(all, res.zeta, res.zeta_sim);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int r = 0; r < R; ++r) {
    res.s_proxy.push_back(s_proxy_of(res.zeta[r]));
    res.s_proxy_sim.push_back(s_proxy_of(res.zeta_sim[r]));
  }

  // Bootstrap over circuits.
  std::vector<std::vector<double>> bz(R), bzs(R), bsp(R), bsps(R), bzt(R), bspt(R);
  Rng rng(derive_seed(seed, {0xb007}));
  std::vector<double> z, zs;
  std::vector<int> pick(circ.size());
  for (int b = 0; b < n_boot && circ.size() > 1; ++b) {
    for (auto& i : pick) i = static_cast<int>(rng.below(circ.size()));
    stats(pick, z, zs);
    for (int r = 0; r < R; ++r) {
      bz[r].push_back(z[r]);
      bzs[r].push_back(zs[r]);
      bsp[r].push_back(s_proxy_of(z[r]));
      bsps[r].push_back(s_proxy_of(zs[r]));
      if (z[R - 1] != 0.0) {
        bzt[r].push_back(z[r] / z[R - 1]);
        bspt[r].push_back(s_proxy_of(z[r] / z[R - 1]));
      }
    }
  }
  auto sd = [&](const std::vector<double>& v) {
    if (v.size() < 2) return nan;
    double m = 0, s = 0;
    for (double x : v) m += x;
    m /= v.size();
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / (v.size() - 1));
  };
  for (int r = 0; r < R; ++r) {
    res.zeta_err.push_back(sd(bz[r]));
    res.zeta_sim_err.push_back(sd(bzs[r]));
    res.s_proxy_err.push_back(sd(bsp[r]));
    res.s_proxy_sim_err.push_back(sd(bsps[r]));
  }
  const double top = res.zeta[R - 1], top_err = res.zeta_err[R - 1];
  res.mitigation_defined = top != 0.0 && !(std::abs(top) <= (std::isnan(top_err) ? 0.0 : top_err));
  for (int r = 0; r < R; ++r) {
    if (res.mitigation_defined) {
      res.zeta_tilde.push_back(res.zeta[r] / top);
      res.s_proxy_tilde.push_back(s_proxy_of(res.zeta[r] / top));
      res.zeta_tilde_err.push_back(sd(bzt[r]));
      res.s_proxy_tilde_err.push_back(sd(bspt[r]));
    } else {
      res.zeta_tilde.push_back(nan);
      res.s_proxy_tilde.push_back(nan);
      res.zeta_tilde_err.push_back(nan);
      res.s_proxy_tilde_err.push_back(nan);
    }
  }
  return res;
}

NoiseFit noise_as_probe(double rho, const std::vector<int>& sizes, const std::vector<double>& zeta_rmax, double tol) {
  if (sizes.size() != zeta_rmax.size() || sizes.size() < 2) throw InvalidArgument("need at least two sizes");
  // Least squares of log zeta = log c + N log b.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(sizes.size());
  for (size_t i = 0; i < sizes.size(); ++i) {
    if (!(zeta_rmax[i] > 0.0)) throw InvalidArgument("zeta(r_max) must be positive to fit");
    const double x = sizes[i], y = std::log(zeta_rmax[i]);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  const double icpt = (sy - slope * sx) / k;
  NoiseFit f;
  f.rho = rho;
  f.b = std::exp(slope);
  f.c = std::exp(icpt);
  f.disentangling = std::abs(f.b - 1.0) < tol;
  return f;
}

Collapse scaling_collapse(const std::vector<CurvePoint>& data, double rho_c, double nu) {
  Collapse out;
  std::map<int, std::vector<std::pair<double, double>>> curves;
  for (const auto& p : data) {
    const double x = (p.rho - rho_c) * std::pow(static_cast<double>(p.n), 1.0 / (2.0 * nu));
    out.scaled.push_back({p.n, x, p.value});
    curves[p.n].emplace_back(x, p.value);
  }
  for (auto& [n, c] : curves) std::sort(c.begin(), c.end());
  // Each point of one curve against the linear interpolation of every other
  // curve wherever the x ranges overlap.
  double sum = 0.0;
  size_t count = 0;
  for (const auto& [n1, c1] : curves)
    for (const auto& [n2, c2] : curves) {
      if (n1 == n2 || c2.size() < 2) continue;
      for (const auto& [x, y] : c1) {
        if (x < c2.front().first || x > c2.back().first) continue;
        auto it = std::lower_bound(c2.begin(), c2.end(), std::make_pair(x, -std::numeric_limits<double>::infinity()));
        double yi;
        if (it == c2.begin()) {
          yi = it->second;
        } else {
          const auto& [xa, ya] = *(it - 1);
          const auto& [xb, yb] = *it;
          yi = xb == xa ? yb : ya + (yb - ya) * (x - xa) / (xb - xa);
        }
        sum += (y - yi) * (y - yi);
        ++count;
      }
    }
  out.residual = count ? sum / count : 0.0;
  return out;
}

double best_collapse_rho_c(const std::vector<CurvePoint>& data, double nu, double lo, double hi, double step) {
  double best = lo, best_res = std::numeric_limits<double>::infinity();
  for (double rc = lo; rc <= hi + 1e-12; rc += step) {
    const double r = scaling_collapse(data, rc, nu).residual;
    if (r < best_res) best_res = r, best = rc;
  }
  return best;
}

double crossing_point(const std::vector<double>& rhos, const std::vector<double>& small,
                      const std::vector<double>& large) {
  if (rhos.size() != small.size() || rhos.size() != large.size()) throw InvalidArgument("curve lengths differ");
  for (size_t i = 0; i + 1 < rhos.size(); ++i) {
    const double d0 = large[i] - small[i], d1 = large[i + 1] - small[i + 1];
    if (d0 == 0.0) return rhos[i];
    if ((d0 < 0) != (d1 < 0)) return rhos[i] + (rhos[i + 1] - rhos[i]) * d0 / (d0 - d1);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace mipt
