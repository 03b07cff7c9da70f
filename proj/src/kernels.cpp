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

#include "mipt/kernels.hpp"

#include <algorithm>
#include <cstdint>

namespace mipt::kernels {

namespace {

inline uint64_t insert_zero(uint64_t i, int pos) {
  const uint64_t lo = i & ((uint64_t{1} << pos) - 1);
  return ((i >> pos) << (pos + 1)) | lo;
}

inline void mix2(cplx* amps, uint64_t i0, uint64_t i1, const cplx* m) {
  const cplx a0 = amps[i0], a1 = amps[i1];
  amps[i0] = m[0] * a0 + m[1] * a1;
  amps[i1] = m[2] * a0 + m[3] * a1;
}

inline void mix4(cplx* amps, uint64_t i00, uint64_t ma, uint64_t mb, const cplx* m) {
  const uint64_t idx[4] = {i00, i00 | mb, i00 | ma, i00 | ma | mb};
  const cplx v[4] = {amps[idx[0]], amps[idx[1]], amps[idx[2]], amps[idx[3]]};
  for (int r = 0; r < 4; ++r)
    amps[idx[r]] = m[4 * r] * v[0] + m[4 * r + 1] * v[1] + m[4 * r + 2] * v[2] + m[4 * r + 3] * v[3];
}

inline uint64_t base_2q(uint64_t i, int lo, int hi) { return insert_zero(insert_zero(i, lo), hi); }

}  // namespace

namespace serial {

void apply_1q(cplx* amps, int n, int q, const cplx* m) {
  const uint64_t half = uint64_t{1} << (n - 1), mask = uint64_t{1} << q;
  for (uint64_t i = 0; i < half; ++i) {
    const uint64_t i0 = insert_zero(i, q);
    mix2(amps, i0, i0 | mask, m);
  }
}

void apply_2q(cplx* amps, int n, int qa, int qb, const cplx* m) {
  const uint64_t quarter = uint64_t{1} << (n - 2);
  const int lo = std::min(qa, qb), hi = std::max(qa, qb);
  const uint64_t ma = uint64_t{1} << qa, mb = uint64_t{1} << qb;
  for (uint64_t i = 0; i < quarter; ++i) mix4(amps, base_2q(i, lo, hi), ma, mb, m);
}

double prob_one(const cplx* amps, int n, int q) {
  const uint64_t half = uint64_t{1} << (n - 1), mask = uint64_t{1} << q;
  double p = 0.0;
  for (uint64_t i = 0; i < half; ++i) p += std::norm(amps[insert_zero(i, q) | mask]);
  return p;
}

void project(cplx* amps, int n, int q, int bit, double scale) {
  const uint64_t half = uint64_t{1} << (n - 1), mask = uint64_t{1} << q;
  for (uint64_t i = 0; i < half; ++i) {
    const uint64_t i0 = insert_zero(i, q);
    const uint64_t keep = bit ? (i0 | mask) : i0;
    const uint64_t drop = bit ? i0 : (i0 | mask);
    amps[keep] *= scale;
    amps[drop] = 0.0;
  }
}

double norm2(const cplx* amps, int n) {
  const uint64_t dim = uint64_t{1} << n;
  double s = 0.0;
  for (uint64_t i = 0; i < dim; ++i) s += std::norm(amps[i]);
  return s;
}

}  // namespace serial

namespace omp {

void apply_1q(cplx* amps, int n, int q, const cplx* m) {
  const int64_t half = int64_t{1} << (n - 1);
  const uint64_t mask = uint64_t{1} << q;
#pragma omp parallel for schedule(static) if (n >= kParallelMinQubits)
  for (int64_t i = 0; i < half; ++i) {
    const uint64_t i0 = insert_zero(static_cast<uint64_t>(i), q);
    mix2(amps, i0, i0 | mask, m);
  }
}

void apply_2q(cplx* amps, int n, int qa, int qb, const cplx* m) {
  const int64_t quarter = int64_t{1} << (n - 2);
  const int lo = std::min(qa, qb), hi = std::max(qa, qb);
  const uint64_t ma = uint64_t{1} << qa, mb = uint64_t{1} << qb;
#pragma omp parallel for schedule(static) if (n >= kParallelMinQubits)
  for (int64_t i = 0; i < quarter; ++i) mix4(amps, base_2q(static_cast<uint64_t>(i), lo, hi), ma, mb, m);
}

double prob_one(const cplx* amps, int n, int q) {
  const int64_t half = int64_t{1} << (n - 1);
  const uint64_t mask = uint64_t{1} << q;
  double p = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : p) if (n >= kParallelMinQubits)
  for (int64_t i = 0; i < half; ++i) p += std::norm(amps[insert_zero(static_cast<uint64_t>(i), q) | mask]);
  return p;
}

void project(cplx* amps, int n, int q, int bit, double scale) {
  const int64_t half = int64_t{1} << (n - 1);
  const uint64_t mask = uint64_t{1} << q;
#pragma omp parallel for schedule(static) if (n >= kParallelMinQubits)
  for (int64_t i = 0; i < half; ++i) {
    const uint64_t i0 = insert_zero(static_cast<uint64_t>(i), q);
    const uint64_t keep = bit ? (i0 | mask) : i0;
    const uint64_t drop = bit ? i0 : (i0 | mask);
    amps[keep] *= scale;
    amps[drop] = 0.0;
  }
}

double norm2(const cplx* amps, int n) {
  const int64_t dim = int64_t{1} << n;
  double s = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : s) if (n >= kParallelMinQubits)
  for (int64_t i = 0; i < dim; ++i) s += std::norm(amps[i]);
  return s;
}

}  // namespace omp

}  // namespace mipt::kernels
