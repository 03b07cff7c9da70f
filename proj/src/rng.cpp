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

#include "mipt/rng.hpp"

#include <cmath>

namespace mipt {

uint64_t mix64(uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

uint64_t derive_seed(uint64_t master, std::initializer_list<uint64_t> path) {
  uint64_t h = mix64(master + 0x243f6a8885a308d3ULL);
  for (uint64_t p : path) h = mix64(h ^ mix64(p + 0x13198a2e03707344ULL));
  return h;
}

uint64_t Rng::below(uint64_t n) {
  if (n <= 1) return 0;
  // Rejection keeps the draw exactly uniform.
  const uint64_t limit = max() - max() % n;
  uint64_t x;
  do {
    x = (*this)();
  } while (x >= limit);
  return x % n;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * 3.14159265358979323846 * u2);
  has_spare_ = true;
  return r * std::cos(2.0 * 3.14159265358979323846 * u2);
}

}  // namespace mipt
