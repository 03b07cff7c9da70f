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

#include "mipt/randmeas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mipt {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

uint64_t restrict_key(uint64_t key, const std::vector<int>& sub) {
  uint64_t r = 0;
  for (size_t i = 0; i < sub.size(); ++i) r |= ((key >> sub[i]) & 1ULL) << i;
  return r;
}

// 2^{N_A} sum_{s,s'} (-2)^{-H(s,s')} n_s n_s' with the diagonal corrected to
// n_s (n_s - 1), over M (M - 1).
double instance_purity(const RandomizedInstance& inst, const std::vector<int>& sub) {
  const int na = static_cast<int>(sub.size());
  const double m = inst.shots;
  if (inst.shots < 2) throw InvalidArgument("purity estimation needs at least two shots per instance");
  double quad = 0.0;
  if (na <= 20) {
    // Dense: apply [[1, -1/2], [-1/2, 1]] on every bit, then take the inner
    // product with the counts.
    std::vector<double> v(size_t{1} << na, 0.0);
    for (const auto& [k, c] : inst.counts) v[restrict_key(k, sub)] += c;
    std::vector<double> w = v;
    for (int b = 0; b < na; ++b) {
      const size_t step = size_t{1} << b;
      for (size_t i = 0; i < w.size(); ++i)
        if (!(i & step)) {
          const double x = w[i], y = w[i | step];
          w[i] = x - 0.5 * y;
          w[i | step] = y - 0.5 * x;
        }
    }
    for (size_t i = 0; i < v.size(); ++i) quad += v[i] * w[i];
  } else {
    std::map<uint64_t, double> marg;
    for (const auto& [k, c] : inst.counts) marg[restrict_key(k, sub)] += c;
    for (const auto& [k1, c1] : marg)
      for (const auto& [k2, c2] : marg) quad += c1 * c2 * std::pow(-0.5, __builtin_popcountll(k1 ^ k2));
  }
  const double unbiased = (quad - m) / (m * (m - 1.0));
  return std::ldexp(unbiased, na);
}

void check_subsystem(const RandomizedDataset& d, const std::vector<int>& sub) {
  if (sub.empty()) throw InvalidArgument("subsystem must be non-empty");
  if (static_cast<int>(sub.size()) > d.n_qubits) throw InvalidArgument("subsystem larger than the system");
  for (int q : sub)
    if (q < 0 || q >= d.n_qubits) throw InvalidArgument("subsystem qubit out of range");
  if (d.instances.empty()) throw InvalidArgument("dataset has no instances");
}

std::vector<double> per_instance(const RandomizedDataset& d, const std::vector<int>& sub) {
  std::vector<double> x;
  for (const auto& inst : d.instances) x.push_back(instance_purity(inst, sub));
  return x;
}

// Jackknife over instances of f(leave-one-out means of each column).
template <typename F>
Estimate jackknife(const std::vector<std::vector<double>>& cols, F f) {
  const size_t k = cols.front().size();
  std::vector<double> sums(cols.size(), 0.0);
  for (size_t c = 0; c < cols.size(); ++c)
    for (double x : cols[c]) sums[c] += x;
  std::vector<double> means(cols.size());
  for (size_t c = 0; c < cols.size(); ++c) means[c] = sums[c] / k;
  Estimate e{f(means), kNan};
  if (k < 2) return e;
  std::vector<double> loo(k);
  double bar = 0.0;
  for (size_t i = 0; i < k; ++i) {
    std::vector<double> m(cols.size());
    for (size_t c = 0; c < cols.size(); ++c) m[c] = (sums[c] - cols[c][i]) / (k - 1);
    loo[i] = f(m);
    bar += loo[i];
  }
  bar /= k;
  double ss = 0.0;
  for (double v : loo) ss += (v - bar) * (v - bar);
  e.stderr_ = std::sqrt(ss * (k - 1) / k);
  return e;
}

double floored_entropy(double purity, int na) { return -std::log2(std::max(purity, std::ldexp(1.0, -na))); }

template <typename Apply>
RandomizedDataset sample_impl(int n, int n_instances, int shots, Rng& rng, const UnitarySampler& sampler,
                              Apply probabilities) {
  if (n_instances < 1 || shots < 1) throw InvalidArgument("instances and shots must be positive");
  RandomizedDataset d;
  d.n_qubits = n;
  for (int i = 0; i < n_instances; ++i) {
    RandomizedInstance inst;
    inst.seed = rng();
    inst.shots = shots;
    Rng r(inst.seed);
    std::vector<Gate1Q> us;
    for (int q = 0; q < n; ++q) us.push_back(sampler(r));
    const std::vector<double> p = probabilities(us);
    std::vector<double> cdf(p.size());
    double acc = 0.0;
    for (size_t k = 0; k < p.size(); ++k) cdf[k] = (acc += p[k]);
    for (int s = 0; s < shots; ++s) {
      const double u = r.uniform() * acc;
      auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      if (it == cdf.end()) --it;
      ++inst.counts[static_cast<uint64_t>(it - cdf.begin())];
    }
    d.instances.push_back(std::move(inst));
  }
  return d;
}

}  // namespace

void RandomizedDataset::validate() const {
  for (const auto& inst : instances) {
    long total = 0;
    for (const auto& [k, c] : inst.counts) {
      if (n_qubits < 64 && (k >> n_qubits) != 0) throw InvalidArgument("bitstring wider than the register");
      total += c;
    }
    if (total != inst.shots)
      throw InvalidArgument("counts sum to " + std::to_string(total) + ", expected " + std::to_string(inst.shots));
  }
}

Estimate estimate_purity(const RandomizedDataset& data, const std::vector<int>& subsystem) {
  check_subsystem(data, subsystem);
  return jackknife({per_instance(data, subsystem)}, [](const std::vector<double>& m) { return m[0]; });
}

Estimate estimate_renyi2(const RandomizedDataset& data, const std::vector<int>& subsystem) {
  check_subsystem(data, subsystem);
  const int na = static_cast<int>(subsystem.size());
  return jackknife({per_instance(data, subsystem)},
                   [na](const std::vector<double>& m) { return floored_entropy(m[0], na); });
}

Estimate mutual_information(const RandomizedDataset& data, const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> ab = a;
  ab.insert(ab.end(), b.begin(), b.end());
  check_subsystem(data, ab);
  std::vector<int> sorted = ab;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidArgument("subsystems must be disjoint");
  const int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
  return jackknife({per_instance(data, a), per_instance(data, b), per_instance(data, ab)},
                   [&](const std::vector<double>& m) {
                     return floored_entropy(m[0], na) + floored_entropy(m[1], nb) - floored_entropy(m[2], na + nb);
                   });
}

EntropyCurve mitigate(const EntropyCurve& curve) {
  const int n = curve.n_qubits;
  auto whole = std::find_if(curve.points.begin(), curve.points.end(),
                            [n](const EntropyPoint& p) { return p.volume == n; });
  if (n <= 0 || whole == curve.points.end()) throw InvalidArgument("curve lacks the whole-system point");
  const double s_whole = whole->s2;
  EntropyCurve out = curve;
  out.mitigated = true;
  for (auto& p : out.points) p.s2 -= (static_cast<double>(p.volume) / n) * s_whole;
  return out;
}

EntropyCurve entropy_curve(const RandomizedDataset& data, const std::vector<int>& order) {
  const int n = static_cast<int>(order.size());
  EntropyCurve c;
  c.n_qubits = n;
  c.points.push_back({0, 0.0, 0.0});
  for (int v = 1; v <= n; ++v) {
    std::vector<std::vector<double>> cols;
    for (int i = 0; i + v <= n; ++i)
      cols.push_back(per_instance(data, std::vector<int>(order.begin() + i, order.begin() + i + v)));
    const Estimate e = jackknife(cols, [v](const std::vector<double>& m) {
      double s = 0.0;
      for (double x : m) s += floored_entropy(x, v);
      return s / m.size();
    });
    c.points.push_back({v, e.value, e.stderr_});
  }
  return c;
}

EntropyCurve entropy_curve(int n, const std::function<double(const std::vector<int>&)>& purity) {
  EntropyCurve c;
  c.n_qubits = n;
  c.points.push_back({0, 0.0, 0.0});
  for (int v = 1; v <= n; ++v) {
    double s = 0.0;
    for (int i = 0; i + v <= n; ++i) {
      std::vector<int> sub;
      for (int k = i; k < i + v; ++k) sub.push_back(k);
      s += -std::log2(purity(sub));
    }
    c.points.push_back({v, s / (n - v + 1), 0.0});
  }
  return c;
}

RandomizedDataset sample_randomized(const StateVector& psi, int n_instances, int shots, Rng& rng,
                                    const UnitarySampler& sampler) {
  return sample_impl(psi.n_qubits(), n_instances, shots, rng, sampler, [&](const std::vector<Gate1Q>& us) {
    StateVector phi = psi;
    for (int q = 0; q < phi.n_qubits(); ++q) phi.apply_gate(us[q], q);
    std::vector<double> p(phi.dim());
    for (size_t k = 0; k < p.size(); ++k) p[k] = std::norm(phi.amps()[k]);
    return p;
  });
}

RandomizedDataset sample_randomized(const DensityMatrix& rho, int n_instances, int shots, Rng& rng,
                                    const UnitarySampler& sampler) {
  const int n = rho.n_qubits;
  return sample_impl(n, n_instances, shots, rng, sampler, [&](const std::vector<Gate1Q>& us) {
    // U rho U^dag, one qubit at a time.
    Eigen::MatrixXcd m = rho.elems;
    const Eigen::Index dim = m.rows();
    for (int q = 0; q < n; ++q) {
      const Mat2& u = us[q].matrix;
      const Eigen::Index step = Eigen::Index{1} << q;
      for (Eigen::Index i = 0; i < dim; ++i)
        if (!(i & step)) {
          const Eigen::RowVectorXcd a = m.row(i), b = m.row(i | step);
          m.row(i) = u(0, 0) * a + u(0, 1) * b;
          m.row(i | step) = u(1, 0) * a + u(1, 1) * b;
        }
      for (Eigen::Index j = 0; j < dim; ++j)
        if (!(j & step)) {
          const Eigen::VectorXcd a = m.col(j), b = m.col(j | step);
          m.col(j) = std::conj(u(0, 0)) * a + std::conj(u(0, 1)) * b;
          m.col(j | step) = std::conj(u(1, 0)) * a + std::conj(u(1, 1)) * b;
        }
    }
    std::vector<double> p(dim);
    for (Eigen::Index k = 0; k < dim; ++k) p[k] = std::max(0.0, m(k, k).real());
    return p;
  });
}

}  // namespace mipt
