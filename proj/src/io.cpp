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

#include "mipt/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mipt {

using nlohmann::json;

namespace {

std::string kind_name(OpKind k) {
  switch (k) {
    case OpKind::Unitary: return "unitary";
    case OpKind::Measure: return "measure";
    case OpKind::Reset: return "reset";
    case OpKind::MeasureReset: return "measure_reset";
    case OpKind::Kraus: return "kraus";
  }
  return "";
}

OpKind kind_from(const std::string& s) {
  if (s == "unitary") return OpKind::Unitary;
  if (s == "measure") return OpKind::Measure;
  if (s == "reset") return OpKind::Reset;
  if (s == "measure_reset") return OpKind::MeasureReset;
  if (s == "kraus") return OpKind::Kraus;
  throw InvalidArgument("unknown operation kind: " + s);
}

// Numbers are emitted as raw decimal text so the file carries exactly the
// digits chosen here.
json number(double x) { return json::parse(format_angle(x)); }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << text;
}

}  // namespace

std::string format_angle(double x) {
  if (!std::isfinite(x)) throw InvalidArgument("non-finite value in circuit");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string format_value(double x) {
  if (std::isnan(x)) return "nan";
  if (x == 0.0) x = 0.0;  // no "-0" in output files
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string circuit_to_json(const Circuit& c) {
  json j;
  j["n_qubits"] = c.n_qubits;
  j["meta"] = {{"family", c.meta.family},
               {"depth", c.meta.depth},
               {"rho", number(c.meta.rho)},
               {"seed", c.meta.seed},
               {"entangler", c.meta.entangler}};
  json moments = json::array();
  for (const auto& m : c.moments) {
    json ops = json::array();
    for (const auto& op : m) {
      json o;
      o["kind"] = kind_name(op.kind);
      o["targets"] = op.targets;
      o["label"] = op.label;
      json params = json::array();
      for (double p : op.params) params.push_back(number(p));
      o["params"] = params;
      if (op.kind == OpKind::Kraus) {
        json mat = json::array();
        for (Eigen::Index r = 0; r < op.matrix.rows(); ++r)
          for (Eigen::Index col = 0; col < op.matrix.cols(); ++col)
            mat.push_back({number(op.matrix(r, col).real()), number(op.matrix(r, col).imag())});
        o["matrix"] = mat;
      }
      ops.push_back(o);
    }
    moments.push_back(ops);
  }
  j["moments"] = moments;
  return j.dump();
}

Circuit circuit_from_json(const std::string& text) {
  Circuit c;
  try {
    const json j = json::parse(text);
    c.n_qubits = j.at("n_qubits").get<int>();
    if (j.contains("meta")) {
      const auto& m = j["meta"];
      c.meta.family = m.value("family", "");
      c.meta.depth = m.value("depth", 0);
      c.meta.rho = m.value("rho", 1.0);
      c.meta.seed = m.value("seed", uint64_t{0});
      c.meta.entangler = m.value("entangler", "");
    }
    for (const auto& jm : j.at("moments")) {
      Moment m;
      for (const auto& o : jm) {
        const OpKind kind = kind_from(o.at("kind").get<std::string>());
        const auto targets = o.at("targets").get<std::vector<int>>();
        const auto label = o.value("label", "");
        const auto params = o.value("params", std::vector<double>{});
        switch (kind) {
          case OpKind::Unitary:
            if (targets.size() == 1) {
              m.push_back(Operation::unitary(gate1_from_label(label, params), targets[0]));
            } else if (targets.size() == 2) {
              m.push_back(Operation::unitary(gate2_from_label(label, params), targets[0], targets[1]));
            } else {
              throw InvalidArgument("gates act on one or two qubits");
            }
            break;
          case OpKind::Kraus: {
            const auto& mat = o.at("matrix");
            const Eigen::Index d = Eigen::Index{1} << targets.size();
            if (static_cast<Eigen::Index>(mat.size()) != d * d) throw InvalidArgument("kraus matrix has wrong size");
            Eigen::MatrixXcd k(d, d);
            for (Eigen::Index i = 0; i < d * d; ++i)
              k(i / d, i % d) = cplx(mat[i].at(0).get<double>(), mat[i].at(1).get<double>());
            m.push_back(Operation::kraus(k, targets, label));
            break;
          }
          case OpKind::Measure: m.push_back(Operation::measure(targets.at(0))); break;
          case OpKind::Reset: m.push_back(Operation::reset(targets.at(0))); break;
          case OpKind::MeasureReset: m.push_back(Operation::measure_reset(targets.at(0))); break;
        }
      }
      c.moments.push_back(std::move(m));
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed circuit file: ") + e.what());
  }
  c.validate();
  return c;
}

void save_circuit(const Circuit& c, const std::string& path) { write_file(path, circuit_to_json(c) + "\n"); }
Circuit load_circuit(const std::string& path) { return circuit_from_json(read_file(path)); }

void write_shots(std::ostream& os, const std::vector<ShotRecord>& shots) {
  for (const auto& s : shots) os << json{{"circuit_id", s.circuit_id}, {"seed", s.seed}, {"bits", s.bits}}.dump() << '\n';
}

std::vector<ShotRecord> read_shots(std::istream& is) {
  std::vector<ShotRecord> out;
  std::string line;
  int lineno = 0;
  size_t width = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      ShotRecord r;
      r.circuit_id = j.at("circuit_id").get<int>();
      r.seed = j.value("seed", uint64_t{0});
      r.bits = j.at("bits").get<std::vector<int>>();
      if (width == 0) width = r.bits.size();
      if (r.bits.size() != width) throw InvalidArgument("record length changes");
      out.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw InvalidArgument("shots line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

void save_shots(const std::vector<ShotRecord>& shots, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  write_shots(out, shots);
}

std::vector<ShotRecord> load_shots(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  return read_shots(in);
}

void write_dataset(std::ostream& os, const RandomizedDataset& d) {
  for (const auto& inst : d.instances) {
    json counts = json::object();
    for (const auto& [k, c] : inst.counts) counts[std::to_string(k)] = c;
    os << json{{"seed", inst.seed}, {"shots", inst.shots}, {"counts", counts}}.dump() << '\n';
  }
}

RandomizedDataset read_dataset(std::istream& is, int n_qubits) {
  RandomizedDataset d;
  d.n_qubits = n_qubits;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      RandomizedInstance inst;
      inst.seed = j.at("seed").get<uint64_t>();
      inst.shots = j.at("shots").get<int>();
      for (const auto& [k, v] : j.at("counts").items()) inst.counts[std::stoull(k)] = v.get<int>();
      d.instances.push_back(std::move(inst));
    } catch (const std::exception& e) {
      throw InvalidArgument("dataset line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  d.validate();
  return d;
}

CsvWriter::CsvWriter(std::ostream& os, std::vector<std::string> header) : os_(os), columns_(header.size()) {
  for (size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
  os_ << '\n';
}

CsvWriter& CsvWriter::cell(const std::string& s) {
  if (filled_ == columns_) throw Error("csv row has too many cells");
  os_ << (filled_++ ? "," : "") << s;
  return *this;
}

CsvWriter& CsvWriter::cell(double x) { return cell(format_value(x)); }
CsvWriter& CsvWriter::cell(long long x) { return cell(std::to_string(x)); }

void CsvWriter::end_row() {
  if (filled_ != columns_) throw Error("csv row has too few cells");
  os_ << '\n';
  filled_ = 0;
}

const std::vector<std::string>& decode_csv_header() {
  static const std::vector<std::string> h = {
      "N",          "rho",          "r",           "zeta",          "zeta_sim",
      "zeta_tilde", "s_proxy",      "s_proxy_sim", "s_proxy_tilde", "stderr_zeta",
      "stderr_zeta_sim", "stderr_zeta_tilde", "stderr_s_proxy", "stderr_s_proxy_sim", "stderr_s_proxy_tilde",
      "shots",      "circuits",     "rejected"};
  return h;
}

void write_decode_rows(CsvWriter& w, int n, double rho, const DecodeResult& res) {
  for (int r = 0; r <= res.r_max; ++r) {
    w.cell(n).cell(rho).cell(r);
    w.cell(res.zeta[r]).cell(res.zeta_sim[r]).cell(res.zeta_tilde[r]);
    w.cell(res.s_proxy[r]).cell(res.s_proxy_sim[r]).cell(res.s_proxy_tilde[r]);
    w.cell(res.zeta_err[r]).cell(res.zeta_sim_err[r]).cell(res.zeta_tilde_err[r]);
    w.cell(res.s_proxy_err[r]).cell(res.s_proxy_sim_err[r]).cell(res.s_proxy_tilde_err[r]);
    w.cell(res.shots).cell(res.circuits).cell(res.rejected);
    w.end_row();
  }
}

}  // namespace mipt
