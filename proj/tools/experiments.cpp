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

#include "experiments.hpp"

#include <openssl/evp.h>
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "mipt/builders.hpp"
#include "mipt/decoder.hpp"
#include "mipt/io.hpp"
#include "mipt/mapping.hpp"
#include "mipt/mps.hpp"
#include "mipt/noise.hpp"
#include "mipt/randmeas.hpp"
#include "mipt/spectral.hpp"

namespace mipt::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Seed-path tags, one per experiment, so streams never collide.
enum Tag : uint64_t { kFig2 = 1, kFig3 = 2, kFig4Circuit = 3, kFig4Shots = 4, kSpectral = 5, kMps = 6, kHaar = 7, kBoot = 8 };

uint64_t u(long long x) { return static_cast<uint64_t>(x); }

// Evaluates f(0..n-1) on `workers` threads and returns the results in index
// order, so the fold that follows never depends on scheduling.
template <typename T>
std::vector<T> parallel_map(int n, int workers, const std::function<T(int)>& f) {
  std::vector<T> out(n);
  std::exception_ptr first;
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (int i = 0; i < n; ++i) {
    try {
      out[i] = f(i);
    } catch (...) {
#pragma omp critical
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
  return out;
}

struct MeanErr {
  double mean = 0.0, err = 0.0;
};

MeanErr mean_err(const std::vector<double>& x) {
  MeanErr m;
  if (x.empty()) return {std::nan(""), std::nan("")};
  for (double v : x) m.mean += v;
  m.mean /= static_cast<double>(x.size());
  if (x.size() < 2) {
    m.err = std::nan("");
    return m;
  }
  double ss = 0.0;
  for (double v : x) ss += (v - m.mean) * (v - m.mean);
  m.err = std::sqrt(ss / static_cast<double>(x.size() - 1) / static_cast<double>(x.size()));
  return m;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t") - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

double parse_number(const std::string& s) {
  size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(x)) throw ConfigError("not a number: '" + s + "'");
  return x;
}

// "a/b" or a decimal.
double parse_fraction(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return parse_number(s);
  const double den = parse_number(s.substr(slash + 1));
  if (den == 0.0) throw ConfigError("zero denominator in '" + s + "'");
  return parse_number(s.substr(0, slash)) / den;
}

double round12(double x) { return std::stod(format_angle(x)); }

// The output tree and the list of files, in write order.
class Output {
 public:
  explicit Output(const std::string& dir) : dir_(dir) { fs::create_directories(dir_); }

  std::ofstream open(const std::string& name) {
    std::ofstream f(dir_ / name, std::ios::binary);
    if (!f) throw Error("cannot write " + (dir_ / name).string());
    files_.push_back(name);
    return f;
  }
  const std::vector<std::string>& files() const { return files_; }
  fs::path path(const std::string& name) const { return dir_ / name; }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
};

std::string read_all(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Row y = 0 of a geometry, ordered by x: the chain left unmeasured in the
// shallow-circuit experiments.
std::vector<int> edge_chain(const Geometry& g) {
  std::vector<std::pair<int, int>> xs;
  for (int q = 0; q < g.size(); ++q)
    if (g.qubits[q].second == 0) xs.emplace_back(g.qubits[q].first, q);
  std::sort(xs.begin(), xs.end());
  std::vector<int> chain;
  for (const auto& [x, q] : xs) chain.push_back(q);
  return chain;
}

std::vector<int> iota_vec(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

// ---------------------------------------------------------------- fig2-dual

void run_fig2(const ExperimentConfig& c, Output& out, std::ostream& log) {
  const int n = c.sizes[0], t = c.depths[0];
  std::ofstream curve_f = out.open("fig2_entropy.csv");
  std::ofstream half_f = out.open("fig2_halfcut.csv");
  CsvWriter curve(curve_f, {"theta", "volume", "s2_exact", "stderr_exact", "s2_randomized", "stderr_randomized", "instances"});
  CsvWriter half(half_f, {"theta", "s2_halfcut", "stderr", "instances"});
  std::vector<int> left = iota_vec(n / 2);
  for (size_t ti = 0; ti < c.theta.size(); ++ti) {
    struct One {
      std::vector<double> exact, sampled;
      double halfcut = 0.0;
    };
    const auto res = parallel_map<One>(c.instances, c.workers, [&](int k) {
      const DualPair p = build_1d_dual_pair(n, t, c.theta[ti], derive_seed(*c.seed, {kFig2, u(ti), u(k)}));
      StateVector psi(n, Backend::Serial);
      simulate_conditioned(p.monitored, psi, most_probable_record(p));
      One o;
      const EntropyCurve ex = entropy_curve(n, [&](const std::vector<int>& a) { return subsystem_purity(psi, a); });
      for (const auto& pt : ex.points) o.exact.push_back(pt.s2);
      o.halfcut = -std::log2(subsystem_purity(psi, left));
      if (c.shots > 0) {
        Rng rng(derive_seed(*c.seed, {kFig2, u(ti), u(k), 1}));
        const EntropyCurve est = entropy_curve(sample_randomized(psi, c.cue, c.shots, rng), iota_vec(n));
        for (const auto& pt : est.points) o.sampled.push_back(pt.s2);
      }
      return o;
    });
    for (int v = 0; v <= n; ++v) {
      std::vector<double> ex, sm;
      for (const auto& o : res) {
        ex.push_back(o.exact[v]);
        if (!o.sampled.empty()) sm.push_back(o.sampled[v]);
      }
      const MeanErr a = mean_err(ex), b = mean_err(sm);
      curve.cell(c.theta[ti]).cell(v).cell(a.mean).cell(a.err).cell(b.mean).cell(b.err).cell(c.instances);
      curve.end_row();
    }
    std::vector<double> hc;
    for (const auto& o : res) hc.push_back(o.halfcut);
    const MeanErr h = mean_err(hc);
    half.cell(c.theta[ti]).cell(h.mean).cell(h.err).cell(c.instances);
    half.end_row();
    log << "fig2-dual theta=" << c.theta[ti] << " half-cut S2=" << h.mean << " +- " << h.err << "\n";
  }
}

// ------------------------------------------------------------- fig3-shallow

void run_fig3(const ExperimentConfig& c, Output& out, std::ostream& log) {
  const Geometry g = find_geometry(c.geometry);
  const std::vector<int> chain = edge_chain(g);
  const int l = static_cast<int>(chain.size());
  if (l < 4 || l > kMaxReducedQubits) throw ConfigError("geometry row y = 0 must hold between 4 and 14 qubits");
  std::vector<int> measured;
  for (int q = 0; q < g.size(); ++q)
    if (std::find(chain.begin(), chain.end(), q) == chain.end()) measured.push_back(q);
  const int tag = c.postselect ? 1 : 0;

  std::ofstream ef = out.open("fig3_entropy.csv");
  std::ofstream mf = out.open("fig3_mi.csv");
  CsvWriter ew(ef, {"T", "volume", "s2", "stderr", "postselected", "instances"});
  CsvWriter mw(mf, {"T", "x", "i2", "stderr", "postselected", "instances"});
  for (int t : c.depths) {
    struct One {
      std::vector<double> s2;
      std::vector<double> i2;  // by gap x
    };
    const auto res = parallel_map<One>(c.instances, c.workers, [&](int k) {
      const Circuit circ = build_shallow_2d(g, t, 1.0, derive_seed(*c.seed, {kFig3, u(t), u(k)}));
      StateVector psi(g.size(), Backend::Serial);
      Rng unused(0);
      simulate(circ, psi, unused);
      if (c.postselect) postselect_most_probable(psi, measured);
      const DensityMatrix rho = reduced_density(psi, chain);
      std::function<double(const std::vector<int>&)> purity = [&](const std::vector<int>& a) {
        return partial_trace(rho, a).purity();
      };
      RandomizedDataset data;
      if (c.shots > 0) {
        Rng rng(derive_seed(*c.seed, {kFig3, u(t), u(k), 1}));
        data = sample_randomized(rho, c.cue, c.shots, rng);
        purity = [&](const std::vector<int>& a) { return estimate_purity(data, a).value; };
      }
      One o;
      for (const auto& pt : entropy_curve(l, purity).points) o.s2.push_back(pt.s2);
      auto s2 = [&](const std::vector<int>& a) { return -std::log2(std::max(purity(a), std::ldexp(1.0, -static_cast<int>(a.size())))); };
      for (int x = 0; x + 4 <= l; ++x) {
        double sum = 0.0;
        int count = 0;
        for (int start = 0; start + x + 4 <= l; ++start) {
          const std::vector<int> a = {start, start + 1}, b = {start + x + 2, start + x + 3};
          sum += s2(a) + s2(b) - s2({a[0], a[1], b[0], b[1]});
          ++count;
        }
        o.i2.push_back(sum / count);
      }
      return o;
    });
    for (int v = 0; v <= l; ++v) {
      std::vector<double> s;
      for (const auto& o : res) s.push_back(o.s2[v]);
      const MeanErr m = mean_err(s);
      ew.cell(t).cell(v).cell(m.mean).cell(m.err).cell(tag).cell(c.instances);
      ew.end_row();
    }
    for (int x = 0; x + 4 <= l; ++x) {
      std::vector<double> s;
      for (const auto& o : res) s.push_back(o.i2[x]);
      const MeanErr m = mean_err(s);
      mw.cell(t).cell(x).cell(m.mean).cell(m.err).cell(tag).cell(c.instances);
      mw.end_row();
      if (x + 4 == l) log << "fig3-shallow T=" << t << " I2(max separation)=" << m.mean << " +- " << m.err << "\n";
    }
  }
}

// ------------------------------------------------------------- fig4-decode

std::vector<DecodedShot> decode_circuit_shots(const Circuit& circ, const Geometry& g, const std::vector<ShotRecord>& shots) {
  const SweepSchedule sched = lightcone_sweep(circ, decoding_plan(circ, g));
  std::vector<DecodedShot> out;
  out.reserve(shots.size());
  for (const auto& s : shots) out.push_back(decode_shot(circ, sched, g.probe, s));
  return out;
}

void run_fig4(const ExperimentConfig& c, Output& out, std::ostream& log) {
  std::ofstream f = out.open("decode.csv");
  CsvWriter w(f, decode_csv_header());
  const int t = c.depths[0];
  for (int n : c.sizes) {
    const Geometry g = find_geometry("n" + std::to_string(n));
    for (size_t ri = 0; ri < c.rho.size(); ++ri) {
      struct One {
        Circuit circuit;
        std::vector<ShotRecord> shots;
        std::vector<DecodedShot> decoded;
      };
      const auto res = parallel_map<One>(c.instances, c.workers, [&](int k) {
        One o;
        o.circuit = build_shallow_2d(g, t, c.rho[ri], derive_seed(*c.seed, {kFig4Circuit, u(n), u(ri), u(k)}));
        std::optional<NoiseModel> noise;
        if (c.epsilon[0] > 0.0) noise = NoiseModel{c.epsilon[0]};
        o.shots = run_shots(o.circuit, g, k, c.shots, derive_seed(*c.seed, {kFig4Shots, u(n), u(ri), u(k)}), noise);
        o.decoded = decode_circuit_shots(o.circuit, g, o.shots);
        return o;
      });
      std::vector<DecodedShot> all;
      for (const auto& o : res) all.insert(all.end(), o.decoded.begin(), o.decoded.end());
      const DecodeResult r = zeta(all, 200, derive_seed(*c.seed, {kBoot, u(n), u(ri)}));
      write_decode_rows(w, n, c.rho[ri], r);
      log << "fig4-decode N=" << n << " rho=" << c.rho[ri] << " S_proxy_sim(r_max-1)=" << r.s_proxy_sim[r.r_max - 1]
          << "\n";
      if (c.save_shots) {
        const std::string stem = "N" + std::to_string(n) + "_rho" + format_angle(c.rho[ri]);
        std::ofstream sf = out.open("shots_" + stem + ".jsonl");
        json circuits = json::array();
        for (const auto& o : res) {
          write_shots(sf, o.shots);
          circuits.push_back(json::parse(circuit_to_json(o.circuit)));
        }
        std::ofstream cf = out.open("circuits_" + stem + ".json");
        cf << circuits.dump() << "\n";
      }
    }
  }
}

// ---------------------------------------------------------------- spectral

void run_spectral(const ExperimentConfig& c, Output& out, std::ostream& log) {
  std::ofstream f = out.open("spectral.csv");
  CsvWriter w(f, {"theta", "L", "r_bar", "stderr", "n_realizations", "skipped"});
  omp_set_num_threads(c.workers);
  for (size_t i = 0; i < c.theta.size(); ++i) {
    const LevelStats s = level_spacing_ratio(c.L, c.theta[i], c.realizations, derive_seed(*c.seed, {kSpectral, u(i)}));
    w.cell(c.theta[i]).cell(c.L).cell(s.r_bar).cell(s.stderr_).cell(s.realizations).cell(s.skipped);
    w.end_row();
    log << "spectral theta=" << c.theta[i] << " r_bar=" << s.r_bar << " +- " << s.stderr_ << "\n";
  }
}

// --------------------------------------------------------------- mps-decode

void run_mps(const ExperimentConfig& c, Output& out, std::ostream& log) {
  const Geometry g = find_geometry(c.geometry);
  const int t = c.depths[0];
  std::ofstream f = out.open("mps_decode.csv");
  CsvWriter w(f, {"rho", "chi", "r", "zeta", "stderr_zeta", "zeta_exact", "stderr_zeta_exact", "tau_agreement",
                  "mean_trunc_error", "shots"});
  std::ofstream ef = out.open("mps_extrapolated.csv");
  CsvWriter ew(ef, {"rho", "r", "beta", "alpha", "residual", "zeta_exact"});
  for (size_t ri = 0; ri < c.rho.size(); ++ri) {
    struct One {
      std::vector<DecodedShot> exact;
      std::vector<std::vector<DecodedShot>> by_chi;
      std::vector<double> trunc;
    };
    const auto res = parallel_map<One>(c.instances, c.workers, [&](int k) {
      const Circuit circ = build_shallow_2d(g, t, c.rho[ri], derive_seed(*c.seed, {kMps, u(ri), u(k)}));
      const SweepSchedule sched = lightcone_sweep(circ, decoding_plan(circ, g));
      const MappedCircuit mc = map_2d_to_1d(circ, g, decoding_mapping_plan(circ, g));
      One o;
      o.by_chi.resize(c.chi.size());
      o.trunc.assign(c.chi.size(), 0.0);
      for (int s = 0; s < c.shots; ++s) {
        Rng rng(derive_seed(*c.seed, {kMps, u(ri), u(k), u(s), 1}));
        auto [bits, trace] = sample_along_sweep(circ, sched, g.probe, rng);
        const int zp = signed_bit(bits[g.probe]);
        o.exact.push_back({k, zp, trace.tau, trace.a_z, false});
        for (size_t ci = 0; ci < c.chi.size(); ++ci) {
          const MpsTrace m = mps_sweep_decode(mc, g.probe, bits, c.chi[ci]);
          o.by_chi[ci].push_back({k, zp, m.tau, m.a_z, false});
          o.trunc[ci] += m.trunc_error;
        }
      }
      return o;
    });
    std::vector<DecodedShot> exact;
    for (const auto& o : res) exact.insert(exact.end(), o.exact.begin(), o.exact.end());
    const uint64_t boot = derive_seed(*c.seed, {kBoot, u(ri)});
    const DecodeResult ex = zeta(exact, 200, boot);
    std::vector<DecodeResult> per_chi;
    for (size_t ci = 0; ci < c.chi.size(); ++ci) {
      std::vector<DecodedShot> all;
      double trunc = 0.0;
      for (const auto& o : res) {
        all.insert(all.end(), o.by_chi[ci].begin(), o.by_chi[ci].end());
        trunc += o.trunc[ci];
      }
      const DecodeResult r = zeta(all, 200, boot);
      per_chi.push_back(r);
      for (int rr = 0; rr <= r.r_max; ++rr) {
        size_t agree = 0;
        for (size_t i = 0; i < all.size(); ++i) agree += all[i].tau[rr] == exact[i].tau[rr];
        w.cell(c.rho[ri]).cell(c.chi[ci]).cell(rr).cell(r.zeta[rr]).cell(r.zeta_err[rr]).cell(ex.zeta[rr]);
        w.cell(ex.zeta_err[rr]).cell(static_cast<double>(agree) / static_cast<double>(all.size()));
        w.cell(trunc / static_cast<double>(all.size())).cell(all.size());
        w.end_row();
      }
      log << "mps-decode rho=" << c.rho[ri] << " chi=" << c.chi[ci] << " zeta(r_max)=" << r.zeta[r.r_max]
          << " exact=" << ex.zeta[ex.r_max] << "\n";
    }
    const bool can_fit = c.chi.size() >= 2 && *std::min_element(c.chi.begin(), c.chi.end()) >= 2;
    for (int rr = 0; can_fit && rr <= ex.r_max; ++rr) {
      std::map<int, double> z;
      for (size_t ci = 0; ci < c.chi.size(); ++ci) z[c.chi[ci]] = per_chi[ci].zeta[rr];
      const ChiFit fit = chi_extrapolate(z);
      ew.cell(c.rho[ri]).cell(rr).cell(fit.beta).cell(fit.alpha).cell(fit.residual).cell(ex.zeta[rr]);
      ew.end_row();
    }
  }
}

// --------------------------------------------------------------- noisy-haar

void run_haar(const ExperimentConfig& c, Output& out, std::ostream& log) {
  const int n = c.sizes[0];
  std::ofstream f = out.open("noisy_haar.csv");
  CsvWriter w(f, {"N", "epsilon", "n_a", "purity_sampled", "stderr", "purity_closed_form", "s2_closed_form",
                  "s2_mitigated_closed_form"});
  std::ofstream sf = out.open("noisy_haar_slope.csv");
  CsvWriter sw(sf, {"N", "epsilon", "sigma", "mitigated_initial_slope", "peak"});
  for (size_t ei = 0; ei < c.epsilon.size(); ++ei) {
    const double eps = c.epsilon[ei];
    const auto res = parallel_map<std::vector<double>>(c.instances, c.workers, [&](int k) {
      Rng rng(derive_seed(*c.seed, {kHaar, u(ei), u(k)}));
      const DensityMatrix rho = apply_depolarizing_dm_all(to_density(haar_state(n, rng)), eps);
      std::vector<double> p(n + 1, 1.0);
      for (int na = 1; na <= n; ++na) p[na] = partial_trace(rho, iota_vec(na)).purity();
      return p;
    });
    EntropyCurve closed;
    closed.n_qubits = n;
    for (int na = 0; na <= n; ++na) closed.points.push_back({na, -std::log2(noisy_haar_purity(n, na, eps)), 0.0});
    const EntropyCurve mitigated = mitigate(closed);
    for (int na = 0; na <= n; ++na) {
      std::vector<double> p;
      for (const auto& r : res) p.push_back(r[na]);
      const MeanErr m = mean_err(p);
      w.cell(n).cell(eps).cell(na).cell(m.mean).cell(m.err).cell(noisy_haar_purity(n, na, eps));
      w.cell(closed.points[na].s2).cell(mitigated.points[na].s2);
      w.end_row();
    }
    const HaarSlope hs = mitigated_haar_slope(eps, n);
    const double slope = mitigated.points[1].s2 - mitigated.points[0].s2;
    sw.cell(n).cell(eps).cell(hs.sigma).cell(slope).cell(hs.peak);
    sw.end_row();
    log << "noisy-haar eps=" << eps << " sigma=" << hs.sigma << " mitigated slope=" << slope << "\n";
  }
}

// ---------------------------------------------------------- decode-external

std::vector<Circuit> load_circuits(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  json j;
  try {
    j = json::parse(ss.str());
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed circuit file: ") + e.what());
  }
  std::vector<Circuit> out;
  if (j.is_array())
    for (const auto& e : j) out.push_back(circuit_from_json(e.dump()));
  else
    out.push_back(circuit_from_json(ss.str()));
  return out;
}

void run_external(const ExperimentConfig& c, Output& out, std::ostream& log) {
  const Geometry g = find_geometry(c.geometry);
  const std::vector<Circuit> circuits = load_circuits(c.circuit_file);
  const std::vector<ShotRecord> shots = load_shots(c.shots_file);
  for (const auto& circ : circuits)
    if (circ.n_qubits != g.size()) throw InvalidArgument("circuit size does not match geometry " + g.name);
  // A single circuit serves every record; a list is indexed by circuit_id.
  auto circuit_of = [&](int id) -> size_t {
    if (circuits.size() == 1) return 0;
    if (id < 0 || static_cast<size_t>(id) >= circuits.size())
      throw InvalidArgument("record names circuit " + std::to_string(id) + ", not in the circuit file");
    return static_cast<size_t>(id);
  };
  for (size_t i = 0; i < shots.size(); ++i) {
    circuit_of(shots[i].circuit_id);
    if (static_cast<int>(shots[i].bits.size()) != g.size())
      throw InvalidArgument("record " + std::to_string(i + 1) + " has " + std::to_string(shots[i].bits.size()) +
                            " bits, the circuit has " + std::to_string(g.size()) + " qubits");
  }

  std::vector<std::vector<size_t>> by_circuit(circuits.size());
  for (size_t i = 0; i < shots.size(); ++i) by_circuit[circuit_of(shots[i].circuit_id)].push_back(i);

  const bool mps = c.backend == "mps";
  const auto res = parallel_map<std::vector<DecodedShot>>(static_cast<int>(circuits.size()), c.workers, [&](int k) {
    const Circuit& circ = circuits[k];
    std::vector<DecodedShot> dec;
    if (!mps) {
      std::vector<ShotRecord> mine;
      for (size_t i : by_circuit[k]) mine.push_back(shots[i]);
      return decode_circuit_shots(circ, g, mine);
    }
    const MappedCircuit mc = map_2d_to_1d(circ, g, decoding_mapping_plan(circ, g));
    for (size_t i : by_circuit[k]) {
      std::vector<int> bits(g.size());
      for (int q = 0; q < g.size(); ++q) bits[q] = binary_bit(shots[i].bits[q]);
      DecodedShot d;
      d.circuit_id = shots[i].circuit_id;
      d.z_p = shots[i].bits[g.probe];
      try {
        const MpsTrace m = mps_sweep_decode(mc, g.probe, bits, c.chi[0]);
        d.tau = m.tau;
        d.a_z = m.a_z;
      } catch (const DegenerateBranch&) {
        d.rejected = true;
      }
      dec.push_back(std::move(d));
    }
    return dec;
  });
  // Back to file order before the fold.
  std::vector<DecodedShot> all(shots.size());
  for (size_t k = 0; k < circuits.size(); ++k)
    for (size_t j = 0; j < by_circuit[k].size(); ++j) all[by_circuit[k][j]] = res[k][j];
  const DecodeResult r = zeta(all, 200, derive_seed(*c.seed, {kBoot}));
  std::ofstream f = out.open("decode_external.csv");
  CsvWriter w(f, decode_csv_header());
  write_decode_rows(w, g.size(), circuits[0].meta.rho, r);
  log << "decode-external backend=" << c.backend << " shots=" << r.shots << " rejected=" << r.rejected
      << " zeta(r_max)=" << r.zeta[r.r_max] << "\n";
}

const std::map<std::string, std::function<void(const ExperimentConfig&, Output&, std::ostream&)>>& runners() {
  static const std::map<std::string, std::function<void(const ExperimentConfig&, Output&, std::ostream&)>> m = {
      {"fig2-dual", run_fig2},   {"fig3-shallow", run_fig3}, {"fig4-decode", run_fig4},
      {"spectral", run_spectral}, {"mps-decode", run_mps},    {"noisy-haar", run_haar},
      {"decode-external", run_external}};
  return m;
}

template <typename T>
std::vector<T> as_list(const json& v, const std::function<T(const json&)>& one) {
  std::vector<T> out;
  if (v.is_array())
    for (const auto& e : v) out.push_back(one(e));
  else
    out.push_back(one(v));
  return out;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> n = {"fig2-dual", "fig3-shallow", "fig4-decode",    "spectral",
                                             "mps-decode", "noisy-haar",  "decode-external"};
  return n;
}

double parse_angle(const std::string& raw) {
  const std::string s = trim(raw);
  if (s.empty()) throw ConfigError("empty angle");
  const auto pi = s.find("pi");
  if (pi == std::string::npos) return parse_number(s);
  const std::string before = s.substr(0, pi), after = s.substr(pi + 2);
  double coeff = before.empty() ? 1.0 : parse_fraction(before);
  if (!after.empty()) {
    if (after[0] != '/') throw ConfigError("cannot parse angle '" + s + "'");
    coeff /= parse_number(after.substr(1));
  }
  return coeff * kPi;
}

std::vector<double> parse_real_list(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    std::vector<double> out;
    for (const auto& part : split(s, ',')) out.push_back(parse_number(part));
    if (out.empty()) throw ConfigError("empty list");
    return out;
  }
  const double lo = parse_number(trim(s.substr(0, dots)));
  std::string rest = s.substr(dots + 2);
  double step = 0.1;
  if (const auto colon = rest.find(':'); colon != std::string::npos) {
    step = parse_number(trim(rest.substr(colon + 1)));
    rest = rest.substr(0, colon);
  }
  const double hi = parse_number(trim(rest));
  if (!(step > 0.0) || hi < lo) throw ConfigError("bad range '" + s + "'");
  std::vector<double> out;
  const long long count = std::llround(std::floor((hi - lo) / step + 1e-9));
  for (long long k = 0; k <= count; ++k) out.push_back(round12(lo + static_cast<double>(k) * step));
  return out;
}

std::vector<double> parse_angle_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& part : split(s, ',')) out.push_back(parse_angle(part));
  if (out.empty()) throw ConfigError("empty angle list");
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  auto to_int = [](const std::string& p) {
    const double x = parse_number(p);
    if (x != std::floor(x) || std::abs(x) > 1e9) throw ConfigError("not an integer: '" + p + "'");
    return static_cast<int>(x);
  };
  std::vector<int> out;
  const auto dots = s.find("..");
  if (dots != std::string::npos) {
    const int lo = to_int(trim(s.substr(0, dots))), hi = to_int(trim(s.substr(dots + 2)));
    if (hi < lo) throw ConfigError("bad range '" + s + "'");
    for (int k = lo; k <= hi; ++k) out.push_back(k);
    return out;
  }
  for (const auto& part : split(s, ',')) out.push_back(to_int(part));
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig c;
  static const std::set<std::string> known = {
      "experiment", "seed",      "output", "workers",   "geometry", "T",           "rho",
      "theta",      "N",         "shots",  "instances", "epsilon",  "chi",         "cue",
      "L",          "realizations", "postselect", "save_shots", "shots_file", "circuit_file", "backend"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw ConfigError("unknown config key '" + k + "'");
  const std::function<double(const json&)> real = [](const json& v) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_angle(v.get<std::string>());
    throw ConfigError("expected a number");
  };
  const std::function<int(const json&)> integer = [](const json& v) {
    if (!v.is_number_integer()) throw ConfigError("expected an integer");
    return v.get<int>();
  };
  auto reals = [&](const json& v) {
    // Strings may be ranges or comma lists.
    if (v.is_string() && v.get<std::string>().find("..") != std::string::npos) return parse_real_list(v.get<std::string>());
    return as_list<double>(v, real);
  };
  auto ints = [&](const json& v) {
    if (v.is_string()) return parse_int_list(v.get<std::string>());
    return as_list<int>(v, integer);
  };
  auto str = [](const json& v, const char* key) {
    if (!v.is_string()) throw ConfigError(std::string("'") + key + "' must be a string");
    return v.get<std::string>();
  };
  try {
    if (j.contains("experiment")) c.experiment = str(j["experiment"], "experiment");
    if (j.contains("seed")) {
      if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<long long>() >= 0))
        throw ConfigError("'seed' must be a non-negative integer");
      c.seed = j["seed"].get<uint64_t>();
    }
    if (j.contains("output")) c.output = str(j["output"], "output");
    if (j.contains("workers")) c.workers = integer(j["workers"]);
    if (j.contains("geometry")) c.geometry = str(j["geometry"], "geometry");
    if (j.contains("T")) c.depths = ints(j["T"]);
    if (j.contains("rho")) c.rho = reals(j["rho"]);
    if (j.contains("theta")) {
      const auto& v = j["theta"];
      c.theta = v.is_string() ? parse_angle_list(v.get<std::string>()) : as_list<double>(v, real);
    }
    if (j.contains("N")) c.sizes = ints(j["N"]);
    if (j.contains("shots")) c.shots = integer(j["shots"]);
    if (j.contains("instances")) c.instances = integer(j["instances"]);
    if (j.contains("epsilon")) c.epsilon = reals(j["epsilon"]);
    if (j.contains("chi")) c.chi = ints(j["chi"]);
    if (j.contains("cue")) c.cue = integer(j["cue"]);
    if (j.contains("L")) c.L = integer(j["L"]);
    if (j.contains("realizations")) c.realizations = integer(j["realizations"]);
    if (j.contains("postselect")) {
      if (!j["postselect"].is_boolean()) throw ConfigError("'postselect' must be true or false");
      c.postselect = j["postselect"].get<bool>();
    }
    if (j.contains("save_shots")) {
      if (!j["save_shots"].is_boolean()) throw ConfigError("'save_shots' must be true or false");
      c.save_shots = j["save_shots"].get<bool>();
    }
    if (j.contains("shots_file")) c.shots_file = str(j["shots_file"], "shots_file");
    if (j.contains("circuit_file")) c.circuit_file = str(j["circuit_file"], "circuit_file");
    if (j.contains("backend")) c.backend = str(j["backend"], "backend");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["experiment"] = c.experiment;
  if (c.seed) j["seed"] = *c.seed;
  j["output"] = c.output;
  j["workers"] = c.workers;
  j["geometry"] = c.geometry;
  j["T"] = c.depths;
  // Angles and rates as 17-digit decimals, so the echo re-runs bit-identically.
  auto exact = [](const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(json::parse(format_value(x)));
    return a;
  };
  j["rho"] = exact(c.rho);
  j["theta"] = exact(c.theta);
  j["N"] = c.sizes;
  j["epsilon"] = exact(c.epsilon);
  j["chi"] = c.chi;
  j["shots"] = c.shots;
  j["instances"] = c.instances;
  j["cue"] = c.cue;
  j["L"] = c.L;
  j["realizations"] = c.realizations;
  j["postselect"] = c.postselect;
  j["save_shots"] = c.save_shots;
  j["shots_file"] = c.shots_file;
  j["circuit_file"] = c.circuit_file;
  j["backend"] = c.backend;
  return j;
}

ExperimentConfig finalize(ExperimentConfig c) {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), c.experiment) == names.end())
    throw ConfigError("unknown experiment '" + c.experiment + "'");
  if (!c.seed) throw ConfigError("a seed is required (--seed or \"seed\")");
  if (c.workers < 1) throw ConfigError("workers must be positive");
  auto need = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  auto fill = [](auto& v, auto def) {
    if (v.empty()) v = def;
  };
  auto fill_int = [](int& v, int def) {
    if (v < 0) v = def;
  };
  auto check_geometry = [&] {
    try {
      find_geometry(c.geometry);
    } catch (const std::exception& e) {
      throw ConfigError("geometry '" + c.geometry + "': " + e.what());
    }
  };
  const std::string& e = c.experiment;
  if (e == "fig2-dual") {
    fill(c.sizes, std::vector<int>{12});
    fill(c.depths, std::vector<int>{7});
    fill(c.theta, std::vector<double>{0.1 * kPi, 0.4 * kPi});
    fill_int(c.instances, 20);
    fill_int(c.shots, 0);
    need(c.sizes.size() == 1 && c.sizes[0] >= 2 && c.sizes[0] % 2 == 0 && c.sizes[0] <= 16,
         "fig2-dual needs one even N in [2, 16]");
    need(c.depths.size() == 1 && c.depths[0] >= 2 && c.depths[0] <= 12, "fig2-dual needs one T in [2, 12]");
    for (double t : c.theta) need(t > 0.0 && t <= kPi / 2 + 1e-12, "theta must lie in (0, pi/2]");
  } else if (e == "fig3-shallow") {
    fill(c.depths, std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8});
    fill_int(c.instances, 20);
    fill_int(c.shots, 0);
    check_geometry();
    for (int t : c.depths) need(t >= 1 && t <= 8, "T must lie in [1, 8]");
  } else if (e == "fig4-decode") {
    fill(c.sizes, std::vector<int>{12, 24});
    fill(c.depths, std::vector<int>{5});
    fill(c.rho, parse_real_list("0.3..1.0"));
    fill(c.epsilon, std::vector<double>{0.0});
    fill_int(c.instances, 200);
    fill_int(c.shots, 200);
    need(c.depths.size() == 1 && c.depths[0] >= 1 && c.depths[0] <= 8, "fig4-decode needs one T in [1, 8]");
    need(c.epsilon.size() == 1 && c.epsilon[0] >= 0.0, "fig4-decode takes one epsilon >= 0");
    for (int n : c.sizes) {
      c.geometry = "n" + std::to_string(n);
      check_geometry();
    }
  } else if (e == "spectral") {
    fill(c.theta, std::vector<double>{0.1 * kPi, 0.4 * kPi});
    need(c.L >= 4 && c.L <= kMaxFloquetSites && c.L % 2 == 0, "L must be even and at most 14");
    need(c.realizations >= 1, "realizations must be positive");
  } else if (e == "mps-decode") {
    fill(c.depths, std::vector<int>{5});
    fill(c.rho, std::vector<double>{0.3, 1.0});
    fill(c.chi, std::vector<int>{16, 64});
    fill_int(c.instances, 20);
    fill_int(c.shots, 50);
    check_geometry();
    need(c.depths.size() == 1 && c.depths[0] >= 1 && c.depths[0] <= 8, "mps-decode needs one T in [1, 8]");
    for (int x : c.chi) need(x >= 1, "chi must be positive");
  } else if (e == "noisy-haar") {
    fill(c.sizes, std::vector<int>{6});
    fill(c.epsilon, std::vector<double>{0.05, 0.2});
    fill_int(c.instances, 500);
    fill_int(c.shots, 0);
    need(c.sizes.size() == 1 && c.sizes[0] >= 1 && c.sizes[0] <= 8, "noisy-haar needs one N in [1, 8]");
    for (double x : c.epsilon) need(x >= 0.0, "epsilon must be non-negative");
  } else if (e == "decode-external") {
    fill(c.chi, std::vector<int>{64});
    need(!c.shots_file.empty() && !c.circuit_file.empty(), "decode-external needs shots_file and circuit_file");
    need(c.backend == "exact" || c.backend == "mps", "backend must be exact or mps");
    need(c.chi[0] >= 1, "chi must be positive");
    need(fs::exists(c.shots_file), "cannot open " + c.shots_file);
    need(fs::exists(c.circuit_file), "cannot open " + c.circuit_file);
    check_geometry();
  }
  for (double r : c.rho) need(r >= 0.0 && r <= 1.0, "rho must lie in [0, 1]");
  need(c.cue >= 1, "cue must be positive");
  if (e != "spectral" && e != "decode-external") {
    need(c.instances >= 1, "instances must be positive");
    need(c.shots >= 0, "shots must be non-negative");
  }
  need((e != "fig4-decode" && e != "mps-decode") || c.shots >= 1, "shots must be positive");
  return c;
}

std::string git_blob_sha1(const std::string& content) {
  const std::string blob = "blob " + std::to_string(content.size()) + std::string(1, '\0') + content;
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(blob.data(), blob.size(), md, &len, EVP_sha1(), nullptr) != 1) throw Error("SHA-1 failed");
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return hex.str();
}

RunReport run_experiment(const ExperimentConfig& c, std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();
  Output out(c.output);
  runners().at(c.experiment)(c, out, log);
  RunReport rep;
  rep.files = out.files();
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json manifest;
  manifest["config"] = config_to_json(c);
  json files = json::object();
  std::string listing;
  for (const auto& f : rep.files) {
    const std::string h = git_blob_sha1(read_all(out.path(f)));
    files[f] = h;
    listing += h + "  " + f + "\n";
  }
  manifest["files"] = files;
  manifest["content_hash"] = git_blob_sha1(listing);
  manifest["wall_time_s"] = rep.wall_seconds;
  std::ofstream mf(out.path("manifest.json"));
  mf << manifest.dump(2) << "\n";
  return rep;
}

}  // namespace mipt::cli
