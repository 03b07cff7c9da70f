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

#include "mipt/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mipt/kernels.hpp"

namespace mipt {

namespace {

// Amplitude offsets contributed by each assignment of the listed qubits.
std::vector<uint64_t> offsets(const std::vector<int>& qubits) {
  std::vector<uint64_t> out(uint64_t{1} << qubits.size());
  for (uint64_t s = 0; s < out.size(); ++s) {
    uint64_t off = 0;
    for (size_t i = 0; i < qubits.size(); ++i)
      if ((s >> i) & 1) off |= uint64_t{1} << qubits[i];
    out[s] = off;
  }
  return out;
}

std::vector<int> complement(int n, const std::vector<int>& sub) {
  std::vector<bool> in(n, false);
  for (int q : sub) {
    if (q < 0 || q >= n) throw InvalidArgument("subsystem qubit out of range");
    if (in[q]) throw InvalidArgument("duplicate subsystem qubit");
    in[q] = true;
  }
  std::vector<int> rest;
  for (int q = 0; q < n; ++q)
    if (!in[q]) rest.push_back(q);
  return rest;
}

// Psi(s, c) = amplitude with subsystem bits s and complement bits c.
Eigen::MatrixXcd split_matrix(const StateVector& psi, const std::vector<int>& sub) {
  const auto rest = complement(psi.n_qubits(), sub);
  const auto os = offsets(sub), oc = offsets(rest);
  Eigen::MatrixXcd m(os.size(), oc.size());
  const auto& a = psi.amps();
  for (size_t c = 0; c < oc.size(); ++c)
    for (size_t s = 0; s < os.size(); ++s) m(s, c) = a[os[s] | oc[c]];
  return m;
}

}  // namespace

double DensityMatrix::purity() const { return elems.cwiseAbs2().sum(); }

double BlochVector::norm() const { return std::sqrt(ax * ax + ay * ay + az * az); }

StateVector::StateVector(int n_qubits, Backend backend) : n_(n_qubits), backend_(backend) {
  if (n_qubits < 1 || n_qubits > 30) throw InvalidArgument("n_qubits must be in [1, 30]");
  amps_.assign(size_t{1} << n_qubits, cplx(0.0));
  amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<cplx> amps, Backend backend) {
  const size_t d = amps.size();
  if (d < 2 || (d & (d - 1)) != 0) throw InvalidArgument("amplitude count must be a power of two >= 2");
  int n = 0;
  while ((size_t{1} << n) < d) ++n;
  StateVector s(n, backend);
  s.amps_ = std::move(amps);
  return s;
}

void StateVector::check_qubit(int q) const {
  if (q < 0 || q >= n_) throw InvalidArgument("qubit " + std::to_string(q) + " out of range");
}

void StateVector::apply_gate(const Gate1Q& g, int q) {
  if (!is_unitary(g.matrix)) throw InvalidArgument("gate " + g.label + " is not unitary");
  apply_matrix(g.matrix, q);
}

void StateVector::apply_gate(const Gate2Q& g, int qa, int qb) {
  if (!is_unitary(g.matrix)) throw InvalidArgument("gate " + g.label + " is not unitary");
  apply_matrix(g.matrix, qa, qb);
}

void StateVector::apply_matrix(const Mat2& m, int q) {
  check_qubit(q);
  const cplx rm[4] = {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
  if (backend_ == Backend::Serial)
    kernels::serial::apply_1q(amps_.data(), n_, q, rm);
  else
    kernels::omp::apply_1q(amps_.data(), n_, q, rm);
}

void StateVector::apply_matrix(const Mat4& m, int qa, int qb) {
  check_qubit(qa);
  check_qubit(qb);
  if (qa == qb) throw InvalidArgument("two-qubit gate targets must differ");
  cplx rm[16];
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) rm[4 * r + c] = m(r, c);
  if (backend_ == Backend::Serial)
    kernels::serial::apply_2q(amps_.data(), n_, qa, qb, rm);
  else
    kernels::omp::apply_2q(amps_.data(), n_, qa, qb, rm);
}

double StateVector::prob_one(int q) const {
  check_qubit(q);
  const double p = backend_ == Backend::Serial ? kernels::serial::prob_one(amps_.data(), n_, q)
                                               : kernels::omp::prob_one(amps_.data(), n_, q);
  return p / norm2();
}

double StateVector::project(int q, int bit) {
  check_qubit(q);
  const double p1 = prob_one(q);
  const double p = bit ? p1 : 1.0 - p1;
  if (p < kDegenerateThreshold)
    throw DegenerateBranch("projection of qubit " + std::to_string(q) + " onto " + std::to_string(bit) +
                           " has probability " + std::to_string(p));
  const double scale = 1.0 / std::sqrt(p * norm2());
  if (backend_ == Backend::Serial)
    kernels::serial::project(amps_.data(), n_, q, bit, scale);
  else
    kernels::omp::project(amps_.data(), n_, q, bit, scale);
  return p;
}

int StateVector::measure(int q, Rng& rng) {
  const double p1 = prob_one(q);
  const int bit = rng.uniform() < p1 ? 1 : 0;
  project(q, bit);
  return bit;
}

void StateVector::reset(int q, Rng& rng) {
  if (measure(q, rng) == 1) apply_matrix(pauli_x().matrix, q);
}

double StateVector::norm2() const {
  return backend_ == Backend::Serial ? kernels::serial::norm2(amps_.data(), n_)
                                     : kernels::omp::norm2(amps_.data(), n_);
}

void StateVector::normalize() {
  const double nn = norm2();
  if (nn <= 0.0) throw Error("cannot normalize a zero vector");
  const double s = 1.0 / std::sqrt(nn);
  for (auto& a : amps_) a *= s;
}

double StateVector::expect_z(int q) const { return 1.0 - 2.0 * prob_one(q); }

DensityMatrix reduced_density(const StateVector& psi, const std::vector<int>& subsystem) {
  if (subsystem.empty()) throw InvalidArgument("empty subsystem");
  if (static_cast<int>(subsystem.size()) > kMaxReducedQubits)
    throw InvalidArgument("reduced density limited to " + std::to_string(kMaxReducedQubits) + " qubits");
  const Eigen::MatrixXcd m = split_matrix(psi, subsystem);
  DensityMatrix rho;
  rho.n_qubits = static_cast<int>(subsystem.size());
  rho.elems = m * m.adjoint();
  rho.elems /= rho.elems.trace().real();
  return rho;
}

double subsystem_purity(const StateVector& psi, const std::vector<int>& subsystem) {
  if (subsystem.empty()) return 1.0;
  const Eigen::MatrixXcd m = split_matrix(psi, subsystem);
  const double nn = m.squaredNorm();
  const Eigen::MatrixXcd g = m.rows() <= m.cols() ? Eigen::MatrixXcd(m * m.adjoint())
                                                  : Eigen::MatrixXcd(m.adjoint() * m);
  return g.cwiseAbs2().sum() / (nn * nn);
}

double renyi2(const DensityMatrix& rho) { return std::max(0.0, -std::log2(rho.purity())); }

BlochVector bloch(const DensityMatrix& rho) {
  if (rho.elems.rows() != 2 || rho.elems.cols() != 2) throw InvalidArgument("bloch needs a 1-qubit state");
  const auto& r = rho.elems;
  return {2.0 * r(1, 0).real(), 2.0 * r(1, 0).imag(), (r(0, 0) - r(1, 1)).real()};
}

std::vector<double> marginal_probabilities(const StateVector& psi, const std::vector<int>& qubits) {
  if (qubits.size() > 24) throw InvalidArgument("marginal over too many qubits");
  for (int q : qubits)
    if (q < 0 || q >= psi.n_qubits()) throw InvalidArgument("qubit out of range");
  std::vector<double> p(size_t{1} << qubits.size(), 0.0);
  for (size_t i = 0; i < psi.dim(); ++i) {
    size_t key = 0;
    for (size_t j = 0; j < qubits.size(); ++j) key |= ((i >> qubits[j]) & 1u) << j;
    p[key] += std::norm(psi.amps()[i]);
  }
  return p;
}

std::vector<int> postselect_most_probable(StateVector& psi, const std::vector<int>& qubits) {
  const std::vector<double> p = marginal_probabilities(psi, qubits);
  const size_t best = static_cast<size_t>(std::max_element(p.begin(), p.end()) - p.begin());
  std::vector<int> bits(qubits.size());
  for (size_t j = 0; j < qubits.size(); ++j) {
    bits[j] = static_cast<int>((best >> j) & 1u);
    psi.project(qubits[j], bits[j]);
  }
  return bits;
}

StateVector tensor(const StateVector& lo, const StateVector& hi) {
  std::vector<cplx> a(lo.dim() * hi.dim());
  for (size_t h = 0; h < hi.dim(); ++h)
    for (size_t l = 0; l < lo.dim(); ++l) a[h * lo.dim() + l] = hi.amps()[h] * lo.amps()[l];
  return StateVector::from_amplitudes(std::move(a), lo.backend());
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("fidelity of states with different sizes");
  cplx ov = 0.0;
  for (size_t i = 0; i < a.dim(); ++i) ov += std::conj(a.amps()[i]) * b.amps()[i];
  return std::norm(ov) / (a.norm2() * b.norm2());
}

}  // namespace mipt
