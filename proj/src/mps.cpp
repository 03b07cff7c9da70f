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

#include "mipt/mps.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mipt/decoder.hpp"

namespace mipt {

using Eigen::MatrixXcd;

namespace {

const Eigen::Matrix4cd& swap_matrix() {
  static const Eigen::Matrix4cd s = swap_gate().matrix;
  return s;
}

}  // namespace

Mps::Mps(int n_sites, int chi_max) : chi_max_(chi_max) {
  if (n_sites < 1) throw InvalidArgument("an MPS needs at least one site");
  if (chi_max < 1) throw InvalidArgument("chi must be positive");
  sites_.resize(n_sites);
  for (auto& s : sites_) {
    s = {MatrixXcd::Ones(1, 1), MatrixXcd::Zero(1, 1)};
  }
}

int Mps::bond_dim(int cut) const { return static_cast<int>(sites_.at(cut)[0].cols()); }

int Mps::max_bond() const {
  int d = 1;
  for (int i = 0; i + 1 < size(); ++i) d = std::max(d, bond_dim(i));
  return d;
}

void Mps::move_center(int to) {
  if (to < 0 || to >= size()) throw InvalidArgument("site out of range");
  while (center_ < to) {
    auto& a = sites_[center_];
    const auto dl = a[0].rows(), dr = a[0].cols();
    MatrixXcd m(2 * dl, dr);
    m << a[0], a[1];
    Eigen::HouseholderQR<MatrixXcd> qr(m);
    const auto k = std::min<Eigen::Index>(2 * dl, dr);
    const MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(2 * dl, k);
    const MatrixXcd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    a[0] = q.topRows(dl);
    a[1] = q.bottomRows(dl);
    for (auto& b : sites_[center_ + 1]) b = r * b;
    ++center_;
  }
  while (center_ > to) {
    auto& a = sites_[center_];
    const auto dl = a[0].rows(), dr = a[0].cols();
    MatrixXcd m(dl, 2 * dr);
    m << a[0], a[1];
    const MatrixXcd mh = m.adjoint();
    Eigen::HouseholderQR<MatrixXcd> qr(mh);
    const auto k = std::min<Eigen::Index>(2 * dr, dl);
    const MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(2 * dr, k);
    const MatrixXcd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    const MatrixXcd qh = q.adjoint();
    a[0] = qh.leftCols(dr);
    a[1] = qh.rightCols(dr);
    const MatrixXcd rh = r.adjoint();
    for (auto& b : sites_[center_ - 1]) b = b * rh;
    --center_;
  }
}

void Mps::apply_1q(const Eigen::Matrix2cd& m, int q) {
  if (q < 0 || q >= size()) throw InvalidArgument("site out of range");
  auto& a = sites_[q];
  const MatrixXcd a0 = m(0, 0) * a[0] + m(0, 1) * a[1];
  const MatrixXcd a1 = m(1, 0) * a[0] + m(1, 1) * a[1];
  a[0] = a0;
  a[1] = a1;
}

void Mps::apply_adjacent(const Eigen::Matrix4cd& g, int left) {
  move_center(left);
  auto& a = sites_[left];
  auto& b = sites_[left + 1];
  const auto dl = a[0].rows(), dr = b[0].cols();
  MatrixXcd t[2][2];
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2) t[s1][s2] = a[s1] * b[s2];
  MatrixXcd m(2 * dl, 2 * dr);
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2) {
      MatrixXcd blk = MatrixXcd::Zero(dl, dr);
      for (int t1 = 0; t1 < 2; ++t1)
        for (int t2 = 0; t2 < 2; ++t2) {
          const cplx c = g(2 * s1 + s2, 2 * t1 + t2);
          if (c != cplx(0.0)) blk += c * t[t1][t2];
        }
      m.block(s1 * dl, s2 * dr, dl, dr) = blk;
    }
  Eigen::BDCSVD<MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  double total = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) total += sv(i) * sv(i);
  if (!(total > 0.0)) throw Error("two-site update produced a zero tensor");
  // Exact zeros are dropped regardless of chi.
  Eigen::Index k = 0;
  while (k < sv.size() && k < chi_max_ && sv(k) > 1e-14 * sv(0)) ++k;
  k = std::max<Eigen::Index>(k, 1);
  double kept = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) kept += sv(i) * sv(i);
  trunc_error_ += std::max(0.0, (total - kept) / total);
  if (kept <= kDegenerateThreshold * total) throw Error("truncation removed the whole state");
  const MatrixXcd u = svd.matrixU().leftCols(k);
  const Eigen::VectorXd s = sv.head(k) / std::sqrt(kept);
  const MatrixXcd sv_h = s.cast<cplx>().asDiagonal() * svd.matrixV().leftCols(k).adjoint();
  a[0] = u.topRows(dl);
  a[1] = u.bottomRows(dl);
  b[0] = sv_h.leftCols(dr);
  b[1] = sv_h.rightCols(dr);
  center_ = left + 1;
}

void Mps::apply_2q(const Eigen::Matrix4cd& m, int qa, int qb) {
  if (qa == qb || qa < 0 || qb < 0 || qa >= size() || qb >= size()) throw InvalidArgument("bad two-qubit targets");
  const Eigen::Matrix4cd& s = swap_matrix();
  // Move qb next to qa, apply with qa's index as the high bit, move back.
  const int dir = qb > qa ? 1 : -1;
  const int near = qa + dir;
  for (int k = qb; k != near; k -= dir) apply_adjacent(s, std::min(k, k - dir));
  if (dir > 0) {
    apply_adjacent(m, qa);
  } else {
    apply_adjacent(s * m * s, near);
  }
  for (int k = near; k != qb; k += dir) apply_adjacent(s, std::min(k, k + dir));
}

void Mps::apply(const Operation& op) {
  if (op.kind != OpKind::Unitary && op.kind != OpKind::Kraus) throw InvalidArgument("Mps::apply takes gates only");
  if (op.is_two_qubit()) {
    const Eigen::Matrix4cd m = op.matrix;
    apply_2q(m, op.targets[0], op.targets[1]);
  } else {
    if (op.kind == OpKind::Kraus) move_center(op.targets[0]);
    const Eigen::Matrix2cd m = op.matrix;
    apply_1q(m, op.targets[0]);
  }
  if (op.kind == OpKind::Kraus) {
    const double n = norm2();
    if (n < kDegenerateThreshold) throw DegenerateBranch("kraus operator annihilated the state");
    for (auto& x : sites_[center_]) x /= std::sqrt(n);
  }
}

double Mps::norm2() {
  const auto& a = sites_[center_];
  return a[0].squaredNorm() + a[1].squaredNorm();
}

double Mps::prob_one(int q) {
  move_center(q);
  const auto& a = sites_[q];
  return a[1].squaredNorm() / (a[0].squaredNorm() + a[1].squaredNorm());
}

double Mps::expect_z(int q) {
  move_center(q);
  const auto& a = sites_[q];
  return (a[0].squaredNorm() - a[1].squaredNorm()) / (a[0].squaredNorm() + a[1].squaredNorm());
}

double Mps::project(int q, int bit) {
  move_center(q);
  auto& a = sites_[q];
  const double w = a[bit].squaredNorm();
  const double p = w / (w + a[1 - bit].squaredNorm());
  if (p < kDegenerateThreshold)
    throw DegenerateBranch("bit " + std::to_string(bit) + " on site " + std::to_string(q) + " has probability " +
                           std::to_string(p));
  a[1 - bit].setZero();
  a[bit] /= std::sqrt(w);
  return p;
}

std::vector<double> Mps::singular_values(int cut) {
  if (cut < 0 || cut + 1 >= size()) throw InvalidArgument("cut out of range");
  move_center(cut);
  const auto& a = sites_[cut];
  MatrixXcd m(2 * a[0].rows(), a[0].cols());
  m << a[0], a[1];
  Eigen::BDCSVD<MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  double total = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) total += sv(i) * sv(i);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < sv.size(); ++i) out.push_back(sv(i) / std::sqrt(total));
  return out;
}

double Mps::bond_renyi2(int cut) {
  double s = 0.0;
  for (double x : singular_values(cut)) s += x * x * x * x;
  return -std::log2(s);
}

double Mps::bond_entropy_vn(int cut) {
  double s = 0.0;
  for (double x : singular_values(cut))
    if (x > 0.0) s -= x * x * std::log2(x * x);
  return s;
}

StateVector Mps::to_statevector() {
  if (size() > 24) throw InvalidArgument("too many sites for a dense state");
  MatrixXcd p = MatrixXcd::Ones(1, 1);
  for (int k = 0; k < size(); ++k) {
    const auto& a = sites_[k];
    MatrixXcd next(2 * p.rows(), a[0].cols());
    next.topRows(p.rows()) = p * a[0];
    next.bottomRows(p.rows()) = p * a[1];
    p = std::move(next);
  }
  std::vector<cplx> amps(p.rows());
  for (Eigen::Index i = 0; i < p.rows(); ++i) amps[i] = p(i, 0);
  // Row index has site k at bit k, so the ordering already matches.
  auto sv = StateVector::from_amplitudes(std::move(amps));
  sv.normalize();
  return sv;
}

MpsTrace mps_sweep_decode(const MappedCircuit& mc, int probe, const std::vector<int>& bits, int chi) {
  const int wire = mc.final_wire.at(probe);
  if (wire < 0) throw InvalidArgument("the probe must stay on a wire until the end");
  Mps mps(mc.n_wires(), chi);
  MpsTrace tr;
  size_t mark = 0, outcome = 0;
  auto emit = [&](int m) {
    while (mark < mc.patch_marks.size() && mc.patch_marks[mark].second == m) {
      const double a = mps.expect_z(wire);
      tr.a_z.push_back(a);
      tr.tau.push_back(sign_of(a));
      ++mark;
    }
  };
  const auto& moments = mc.circuit.moments;
  for (size_t m = 0; m < moments.size(); ++m) {
    emit(static_cast<int>(m));
    for (const auto& op : moments[m]) {
      switch (op.kind) {
        case OpKind::Unitary:
        case OpKind::Kraus: mps.apply(op); break;
        case OpKind::Measure:
        case OpKind::MeasureReset: {
          const int b = bits.at(mc.outcome_qubits.at(outcome++));
          mps.project(op.targets[0], b);
          if (op.kind == OpKind::MeasureReset && b == 1) mps.apply_1q(pauli_x().matrix, op.targets[0]);
          break;
        }
        case OpKind::Reset: {
          if (mps.prob_one(op.targets[0]) > kDegenerateThreshold && mps.prob_one(op.targets[0]) < 1 - 1e-12)
            throw InvalidArgument("bare reset on a superposed wire");
          if (mps.prob_one(op.targets[0]) > 0.5) mps.apply_1q(pauli_x().matrix, op.targets[0]);
          break;
        }
      }
    }
  }
  emit(static_cast<int>(moments.size()));
  if (mark != mc.patch_marks.size()) throw Error("patch marks out of order");
  tr.trunc_error = mps.truncation_error();
  tr.max_bond = mps.max_bond();
  return tr;
}

ChiFit chi_extrapolate(const std::map<int, double>& zeta_by_chi) {
  if (zeta_by_chi.size() < 2) throw InvalidArgument("need at least two bond dimensions");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(zeta_by_chi.size());
  for (const auto& [chi, z] : zeta_by_chi) {
    if (chi < 2) throw InvalidArgument("chi must be at least 2");
    const double x = 1.0 / std::log(static_cast<double>(chi));
    sx += x, sy += z, sxx += x * x, sxy += x * z;
  }
  ChiFit f;
  f.alpha = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  f.beta = (sy - f.alpha * sx) / k;
  for (const auto& [chi, z] : zeta_by_chi) {
    const double d = z - (f.alpha / std::log(static_cast<double>(chi)) + f.beta);
    f.residual += d * d;
  }
  return f;
}

std::vector<int> inject_sign_flips(const std::vector<int>& tau, double q, Rng& rng) {
  if (q < 0.0 || q > 1.0) throw InvalidArgument("q must lie in [0, 1]");
  std::vector<int> out = tau;
  for (int& t : out)
    if (rng.uniform() >= q) t = -t;
  return out;
}

}  // namespace mipt
