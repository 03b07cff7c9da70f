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

#pragma once

#include <cstddef>

#include "mipt/common.hpp"

// Strided in-place amplitude kernels. Matrices are row-major; for two-qubit
// kernels the row index is 2*bit(qa) + bit(qb). The serial versions are the
// reference the OpenMP versions are tested and benchmarked against.
namespace mipt::kernels {

namespace serial {
void apply_1q(cplx* amps, int n, int q, const cplx* m);
void apply_2q(cplx* amps, int n, int qa, int qb, const cplx* m);
double prob_one(const cplx* amps, int n, int q);
// Zero the amplitudes with bit(q) != bit and scale the rest.
void project(cplx* amps, int n, int q, int bit, double scale);
double norm2(const cplx* amps, int n);
}  // namespace serial

namespace omp {
void apply_1q(cplx* amps, int n, int q, const cplx* m);
void apply_2q(cplx* amps, int n, int qa, int qb, const cplx* m);
double prob_one(const cplx* amps, int n, int q);
void project(cplx* amps, int n, int q, int bit, double scale);
double norm2(const cplx* amps, int n);
}  // namespace omp

// Registers below this size never spawn threads.
inline constexpr int kParallelMinQubits = 14;

}  // namespace mipt::kernels
