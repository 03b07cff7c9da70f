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

// Serial reference kernels against their OpenMP counterparts, plus one
// end-to-end decoding sweep. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <vector>

#include "mipt/builders.hpp"
#include "mipt/decoder.hpp"
#include "mipt/gates.hpp"
#include "mipt/kernels.hpp"
#include "mipt/sweep.hpp"

using namespace mipt;

namespace {

std::vector<cplx> random_amps(int n) {
  Rng rng(1);
  std::vector<cplx> a(size_t{1} << n);
  for (auto& x : a) x = cplx(rng.normal(), rng.normal());
  return a;
}

template <void (*Kernel)(cplx*, int, int, const cplx*)>
void one_qubit(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  auto amps = random_amps(n);
  const Mat2 h = hadamard().matrix;
  const std::vector<cplx> m = {h(0, 0), h(0, 1), h(1, 0), h(1, 1)};
  for (auto _ : st) {
    for (int q = 0; q < n; ++q) Kernel(amps.data(), n, q, m.data());
    benchmark::ClobberMemory();
  }
  st.SetItemsProcessed(st.iterations() * n * (int64_t{1} << n));
}

template <void (*Kernel)(cplx*, int, int, int, const cplx*)>
void two_qubit(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  auto amps = random_amps(n);
  const Mat4 g = fsim(0.4, 0.8).matrix;
  std::vector<cplx> m(16);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m[4 * r + c] = g(r, c);
  for (auto _ : st) {
    for (int q = 0; q + 1 < n; ++q) Kernel(amps.data(), n, q, q + 1, m.data());
    benchmark::ClobberMemory();
  }
  st.SetItemsProcessed(st.iterations() * (n - 1) * (int64_t{1} << n));
}

template <double (*Kernel)(const cplx*, int, int)>
void probability(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto amps = random_amps(n);
  for (auto _ : st)
    for (int q = 0; q < n; ++q) benchmark::DoNotOptimize(Kernel(amps.data(), n, q));
  st.SetItemsProcessed(st.iterations() * n * (int64_t{1} << n));
}

void decode_sweep(benchmark::State& st) {
  const Geometry g = builtin_geometry("n24");
  const Circuit c = build_shallow_2d(g, 5, 1.0, 3);
  const SweepSchedule sched = lightcone_sweep(c, decoding_plan(c, g));
  uint64_t s = 0;
  for (auto _ : st) {
    Rng rng(++s);
    benchmark::DoNotOptimize(sample_along_sweep(c, sched, g.probe, rng));
  }
}

}  // namespace

BENCHMARK(one_qubit<kernels::serial::apply_1q>)->Name("apply_1q/serial")->DenseRange(16, 22, 3);
BENCHMARK(one_qubit<kernels::omp::apply_1q>)->Name("apply_1q/omp")->DenseRange(16, 22, 3);
BENCHMARK(two_qubit<kernels::serial::apply_2q>)->Name("apply_2q/serial")->DenseRange(16, 22, 3);
BENCHMARK(two_qubit<kernels::omp::apply_2q>)->Name("apply_2q/omp")->DenseRange(16, 22, 3);
BENCHMARK(probability<kernels::serial::prob_one>)->Name("prob_one/serial")->DenseRange(16, 22, 3);
BENCHMARK(probability<kernels::omp::prob_one>)->Name("prob_one/omp")->DenseRange(16, 22, 3);
BENCHMARK(decode_sweep)->Name("sample_along_sweep/n24");

BENCHMARK_MAIN();
