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

#include "mipt/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mipt/common.hpp"
#include "mipt/rng.hpp"

namespace mipt {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

// Applies one period to a vector expanded over `basis`; `index` maps a basis
// state to its position.
void apply_period(const FloquetSpec& s, const std::vector<uint32_t>& basis, const std::vector<int>& index,
                  VectorXcd& v) {
  const double c = std::cos(s.theta), sn = std::sin(s.theta);
  const cplx phase11 = std::exp(cplx(0.0, -2.0 * s.theta));
  auto layer = [&](int first) {
    for (int i = first; i + 1 < s.L; i += 2) {
      const uint32_t m = (1u << i) | (1u << (i + 1));
      for (size_t k = 0; k < basis.size(); ++k) {
        const uint32_t b = basis[k] & m;
        if (b == m) {
          v[k] *= phase11;
        } else if (b == (1u << i)) {
          const int j = index[basis[k] ^ m];
          const cplx x = v[k], y = v[j];
          v[k] = c * x + cplx(0.0, -sn) * y;
          v[j] = cplx(0.0, -sn) * x + c * y;
        }
      }
    }
  };
  auto fields = [&] {
    for (size_t k = 0; k < basis.size(); ++k) {
      double e = 0.0;
      for (int i = 0; i < s.L; ++i) e += ((basis[k] >> i) & 1u) ? -s.h[i] : s.h[i];
      v[k] *= std::exp(cplx(0.0, -e));
    }
  };
  layer(1);
  fields();
  layer(0);
  fields();
}

MatrixXcd build(const FloquetSpec& s, const std::vector<uint32_t>& basis) {
  std::vector<int> index(size_t{1} << s.L, -1);
  for (size_t k = 0; k < basis.size(); ++k) index[basis[k]] = static_cast<int>(k);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  MatrixXcd u(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    VectorXcd v = VectorXcd::Zero(dim);
    v[col] = 1.0;
    apply_period(s, basis, index, v);
    u.col(col) = v;
  }
  return u;
}

}  // namespace

void FloquetSpec::validate() const {
  if (L < 2 || L > kMaxFloquetSites) throw InvalidArgument("L must lie in [2, " + std::to_string(kMaxFloquetSites) + "]");
  if (static_cast<int>(h.size()) != L) throw InvalidArgument("need one field per site");
  if ((L - charge) % 2 != 0 || std::abs(charge) > L) throw InvalidArgument("charge incompatible with L");
}

std::vector<uint32_t> charge_sector(int L, int charge) {
  const int ones = (L - charge) / 2;
  std::vector<uint32_t> out;
  for (uint32_t b = 0; b < (1u << L); ++b)
    if (__builtin_popcount(b) == ones) out.push_back(b);
  return out;
}

MatrixXcd floquet_unitary(const FloquetSpec& spec) {
  spec.validate();
  return build(spec, charge_sector(spec.L, spec.charge));
}

MatrixXcd floquet_unitary_full(const FloquetSpec& spec) {
  spec.validate();
  std::vector<uint32_t> all(size_t{1} << spec.L);
  for (uint32_t b = 0; b < all.size(); ++b) all[b] = b;
  return build(spec, all);
}

std::vector<double> quasi_energies(const MatrixXcd& u) {
  Eigen::ComplexEigenSolver<MatrixXcd> es(u, false);
  if (es.info() != Eigen::Success) throw Error("eigensolver failed");
  std::vector<double> e;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double x = -std::arg(es.eigenvalues()[i]);
    if (x <= -kPi) x += 2.0 * kPi;
    e.push_back(x);
  }
  std::sort(e.begin(), e.end());
  return e;
}

double mean_spacing_ratio(const std::vector<double>& e) {
  if (e.size() < 3) throw InvalidArgument("need at least three levels");
  double sum = 0.0;
  for (size_t n = 0; n + 2 < e.size(); ++n) {
    const double d0 = e[n + 1] - e[n], d1 = e[n + 2] - e[n + 1];
    if (d0 < 1e-12 || d1 < 1e-12) return std::nan("");
    sum += std::min(d0, d1) / std::max(d0, d1);
  }
  return sum / static_cast<double>(e.size() - 2);
}

LevelStats level_spacing_ratio(int L, double theta, int n_realizations, uint64_t seed) {
  if (n_realizations < 1) throw InvalidArgument("need at least one realization");
  std::vector<double> r(n_realizations);
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < n_realizations; ++k) {
    Rng rng(derive_seed(seed, {static_cast<uint64_t>(k)}));
    FloquetSpec s{L, theta, {}, 0};
    for (int i = 0; i < L; ++i) s.h.push_back(rng.uniform(0.0, 2.0 * kPi));
    r[k] = mean_spacing_ratio(quasi_energies(floquet_unitary(s)));
  }
  LevelStats st;
  double sum = 0.0, sq = 0.0;
  for (double x : r) {
    if (std::isnan(x)) {
      ++st.skipped;
      continue;
    }
    ++st.realizations;
    sum += x;
    sq += x * x;
  }
  if (st.realizations == 0) throw Error("every realization was degenerate");
  st.r_bar = sum / st.realizations;
  const double var = st.realizations > 1 ? (sq - st.realizations * st.r_bar * st.r_bar) / (st.realizations - 1) : 0.0;
  st.stderr_ = std::sqrt(std::max(0.0, var) / st.realizations);
  return st;
}

}  // namespace mipt
