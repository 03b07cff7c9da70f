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

#include "mipt/gates.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace mipt {

namespace {

const cplx kI(0.0, 1.0);

Mat2 pauli(char p) {
  Mat2 m;
  switch (p) {
    case 'x': m << 0, 1, 1, 0; break;
    case 'y': m << 0, -kI, kI, 0; break;
    case 'z': m << 1, 0, 0, -1; break;
    default: m.setIdentity();
  }
  return m;
}

const char* kSqLabels[kNumSqGates] = {"sqrt_x", "sqrt_x_inv", "sqrt_y", "sqrt_y_inv",
                                      "sqrt_w", "sqrt_w_inv", "sqrt_v", "sqrt_v_inv"};

Mat2 generic_params_to_mat2(const std::vector<double>& p) {
  if (p.size() != 8) throw InvalidArgument("u1 gate needs 8 parameters");
  Mat2 m;
  for (int i = 0; i < 4; ++i) m(i / 2, i % 2) = cplx(p[2 * i], p[2 * i + 1]);
  return m;
}

}  // namespace

double wrap_angle(double a) {
  double r = std::fmod(a, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  if (r > kPi) r -= 2.0 * kPi;
  return r;
}

FsimParams FsimParams::canonical() const {
  return {wrap_angle(theta), wrap_angle(phi), wrap_angle(delta_plus), wrap_angle(delta_minus),
          wrap_angle(delta_minus_off)};
}

Gate2Q fsim(const FsimParams& raw) {
  const FsimParams p = raw.canonical();
  const double c = std::cos(p.theta), s = std::sin(p.theta);
  Mat4 m = Mat4::Zero();
  m(0, 0) = 1.0;
  m(1, 1) = std::exp(kI * (p.delta_plus + p.delta_minus)) * c;
  m(1, 2) = -kI * std::exp(kI * (p.delta_plus - p.delta_minus_off)) * s;
  m(2, 1) = -kI * std::exp(kI * (p.delta_plus + p.delta_minus_off)) * s;
  m(2, 2) = std::exp(kI * (p.delta_plus - p.delta_minus)) * c;
  m(3, 3) = std::exp(kI * (2.0 * p.delta_plus - p.phi));
  return {m, "fsim", {p.theta, p.phi, p.delta_plus, p.delta_minus, p.delta_minus_off}};
}

Gate2Q fsim(double theta, double phi) { return fsim(FsimParams{theta, phi}); }

Gate2Q cz() {
  Gate2Q g = fsim(0.0, kPi);
  g.label = "cz";
  g.params.clear();
  return g;
}

Gate2Q swap_gate() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
  return {m, "swap", {}};
}

Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) m(2 * i + j, 2 * k + l) = a(i, k) * b(j, l);
  return m;
}

Gate2Q cnot() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  return {m, "cnot", {}};
}

FsimParams iswap_like_params() { return {kPi / 2.0, kPi / 6.0}; }

Gate2Q iswap_like() { return fsim(iswap_like_params()); }

Gate1Q identity1() { return {Mat2::Identity(), "id", {}}; }
Gate1Q pauli_x() { return {pauli('x'), "x", {}}; }
Gate1Q pauli_y() { return {pauli('y'), "y", {}}; }
Gate1Q pauli_z() { return {pauli('z'), "z", {}}; }

Gate1Q hadamard() {
  Mat2 m;
  m << 1, 1, 1, -1;
  return {m / std::sqrt(2.0), "h", {}};
}

Gate1Q z_pow(double h) {
  Mat2 m = Mat2::Identity();
  m(1, 1) = std::exp(kI * kPi * h);
  return {m, "z_pow", {h}};
}

Mat2 principal_sqrt(const Mat2& m) {
  Eigen::ComplexEigenSolver<Mat2> es(m);
  Mat2 vecs = es.eigenvectors();
  Eigen::Vector2cd vals = es.eigenvalues();
  for (int i = 0; i < 2; ++i) {
    double r = std::abs(vals(i));
    double a = std::arg(vals(i));
    // Keep the branch cut on the negative real axis deterministic.
    if (a <= -kPi + 1e-12) a = kPi;
    vals(i) = std::polar(std::sqrt(r), a / 2.0);
  }
  return vecs * vals.asDiagonal() * vecs.inverse();
}

Gate1Q sq_gate(int index) {
  if (index < 0 || index >= kNumSqGates) throw InvalidArgument("sq_gate index out of range");
  const double r = 1.0 / std::sqrt(2.0);
  Mat2 base;
  switch (index / 2) {
    case 0: base = pauli('x'); break;
    case 1: base = pauli('y'); break;
    case 2: base = r * (pauli('x') + pauli('y')); break;
    default: base = r * (pauli('x') - pauli('y')); break;
  }
  Mat2 root = principal_sqrt(base);
  if (index % 2 == 1) root = root.adjoint().eval();
  return {root, kSqLabels[index], {}};
}

Gate1Q random_sq_gate(Rng& rng) { return sq_gate(static_cast<int>(rng.below(kNumSqGates))); }

Gate1Q cue_1q(Rng& rng) {
  Mat2 z;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) z(i, j) = cplx(rng.normal(), rng.normal()) / std::sqrt(2.0);
  Eigen::HouseholderQR<Mat2> qr(z);
  Mat2 q = qr.householderQ();
  Mat2 rmat = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phases so that R has a positive real diagonal; this makes Q Haar.
  for (int j = 0; j < 2; ++j) {
    const cplx d = rmat(j, j);
    const cplx ph = std::abs(d) > 0 ? d / std::abs(d) : cplx(1.0);
    q.col(j) *= ph;
  }
  std::vector<double> params;
  for (int i = 0; i < 4; ++i) {
    params.push_back(q(i / 2, i % 2).real());
    params.push_back(q(i / 2, i % 2).imag());
  }
  return {q, "u1", params};
}

Gate1Q gate1_from_label(const std::string& label, const std::vector<double>& params) {
  if (label == "id") return identity1();
  if (label == "x") return pauli_x();
  if (label == "y") return pauli_y();
  if (label == "z") return pauli_z();
  if (label == "h") return hadamard();
  if (label == "z_pow") {
    if (params.size() != 1) throw InvalidArgument("z_pow needs one parameter");
    return z_pow(params[0]);
  }
  if (label == "u1") return {generic_params_to_mat2(params), "u1", params};
  for (int i = 0; i < kNumSqGates; ++i)
    if (label == kSqLabels[i]) return sq_gate(i);
  throw InvalidArgument("unknown single-qubit gate label: " + label);
}

Gate2Q gate2_from_label(const std::string& label, const std::vector<double>& params) {
  if (label == "fsim") {
    if (params.size() != 5) throw InvalidArgument("fsim needs five parameters");
    return fsim(FsimParams{params[0], params[1], params[2], params[3], params[4]});
  }
  if (label == "cz") return cz();
  if (label == "swap") return swap_gate();
  if (label == "cnot") return cnot();
  if (label == "id2") return {};
  if (label == "u2") {
    if (params.size() != 32) throw InvalidArgument("u2 gate needs 32 parameters");
    Mat4 m;
    for (int i = 0; i < 16; ++i) m(i / 4, i % 4) = cplx(params[2 * i], params[2 * i + 1]);
    return {m, "u2", params};
  }
  throw InvalidArgument("unknown two-qubit gate label: " + label);
}

}  // namespace mipt
