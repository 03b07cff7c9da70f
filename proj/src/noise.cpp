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

#include "mipt/noise.hpp"

#include <algorithm>
#include <cmath>

namespace mipt {

double DepolarizingChannel::pauli_probability() const {
  if (epsilon < 0.0) throw InvalidArgument("epsilon must be non-negative");
  return 0.75 * (1.0 - std::exp(-epsilon));
}

void apply_depolarizing_stochastic(StateVector& psi, int q, double eps, Rng& rng) {
  const double p = DepolarizingChannel{eps}.pauli_probability();
  if (rng.uniform() >= p) return;
  switch (rng.below(3)) {
    case 0: psi.apply_gate(pauli_x(), q); break;
    case 1: psi.apply_gate(pauli_y(), q); break;
    default: psi.apply_gate(pauli_z(), q); break;
  }
}

DensityMatrix apply_depolarizing_dm(const DensityMatrix& rho, int q, double eps) {
  if (eps < 0.0) throw InvalidArgument("epsilon must be non-negative");
  if (q < 0 || q >= rho.n_qubits) throw InvalidArgument("qubit out of range");
  const double e = std::exp(-eps);
  const double keep = 0.5 * (1.0 + e), move = 0.5 * (1.0 - e);
  const Eigen::Index step = Eigen::Index{1} << q;
  DensityMatrix out = rho;
  const Eigen::Index dim = rho.elems.rows();
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) {
      if (((i ^ j) & step) != 0) {
        out.elems(i, j) = e * rho.elems(i, j);
      } else {
        out.elems(i, j) = keep * rho.elems(i, j) + move * rho.elems(i ^ step, j ^ step);
      }
    }
  return out;
}

DensityMatrix apply_depolarizing_dm_all(const DensityMatrix& rho, double eps) {
  DensityMatrix out = rho;
  for (int q = 0; q < rho.n_qubits; ++q) out = apply_depolarizing_dm(out, q, eps);
  return out;
}

DensityMatrix to_density(const StateVector& psi) {
  if (psi.n_qubits() > kMaxReducedQubits) throw InvalidArgument("state too large for a density matrix");
  Eigen::Map<const Eigen::VectorXcd> v(psi.amps().data(), static_cast<Eigen::Index>(psi.dim()));
  return {psi.n_qubits(), v * v.adjoint()};
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  const int n = rho.n_qubits, k = static_cast<int>(keep.size());
  std::vector<int> rest;
  for (int q = 0; q < n; ++q)
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) rest.push_back(q);
  if (static_cast<int>(rest.size()) + k != n) throw InvalidArgument("bad subsystem");
  auto spread = [](uint64_t bits, const std::vector<int>& where) {
    uint64_t r = 0;
    for (size_t i = 0; i < where.size(); ++i) r |= ((bits >> i) & 1ULL) << where[i];
    return r;
  };
  const Eigen::Index dk = Eigen::Index{1} << k, dr = Eigen::Index{1} << rest.size();
  DensityMatrix out{k, Eigen::MatrixXcd::Zero(dk, dk)};
  for (Eigen::Index e = 0; e < dr; ++e) {
    const uint64_t env = spread(e, rest);
    for (Eigen::Index a = 0; a < dk; ++a)
      for (Eigen::Index b = 0; b < dk; ++b) out.elems(a, b) += rho.elems(env | spread(a, keep), env | spread(b, keep));
  }
  return out;
}

StateVector haar_state(int n, Rng& rng) {
  std::vector<cplx> amps(size_t{1} << n);
  for (auto& a : amps) a = cplx(rng.normal(), rng.normal());
  auto psi = StateVector::from_amplitudes(std::move(amps));
  psi.normalize();
  return psi;
}

double noisy_haar_purity(int n, int n_a, double eps) {
  if (n_a < 0 || n_a > n) throw InvalidArgument("subsystem size out of range");
  const double f = 0.5 * (1.0 + 3.0 * std::exp(-2.0 * eps));
  return (std::ldexp(1.0, n - n_a) + std::pow(f, n_a)) / (std::ldexp(1.0, n) + 1.0);
}

HaarSlope mitigated_haar_slope(double eps, int n) {
  if (eps < 0.0) throw InvalidArgument("epsilon must be non-negative");
  HaarSlope s;
  s.sigma = std::log2(0.5 * (1.0 + 3.0 * std::exp(-2.0 * eps)));
  s.peak = n / (1.0 + s.sigma);
  return s;
}

}  // namespace mipt
