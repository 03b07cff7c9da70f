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

#include <iosfwd>
#include <string>
#include <vector>

#include "mipt/circuit.hpp"
#include "mipt/decoder.hpp"
#include "mipt/randmeas.hpp"

namespace mipt {

// Decimal with 12 significant digits, the precision of every angle and matrix
// entry in circuit files.
std::string format_angle(double x);
// Decimal with up to 17 significant digits for data files; round-trips.
std::string format_value(double x);

// {n_qubits, meta, moments: [[op ...] ...]}; ops carry kind, targets, label
// and params, and Kraus ops also their matrix as [re, im] pairs.
std::string circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const std::string& text);
void save_circuit(const Circuit& c, const std::string& path);
Circuit load_circuit(const std::string& path);

// JSONL, one {circuit_id, seed, bits} per line.
void write_shots(std::ostream& os, const std::vector<ShotRecord>& shots);
// Errors name the 1-based line.
std::vector<ShotRecord> read_shots(std::istream& is);
void save_shots(const std::vector<ShotRecord>& shots, const std::string& path);
std::vector<ShotRecord> load_shots(const std::string& path);

// JSONL, one {seed, shots, counts: {"<int>": count}} per line.
void write_dataset(std::ostream& os, const RandomizedDataset& d);
RandomizedDataset read_dataset(std::istream& is, int n_qubits);

// Comma-separated rows; values are written with format_value.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, std::vector<std::string> header);
  CsvWriter& cell(const std::string& s);
  CsvWriter& cell(double x);
  CsvWriter& cell(long long x);
  CsvWriter& cell(int x) { return cell(static_cast<long long>(x)); }
  CsvWriter& cell(size_t x) { return cell(static_cast<long long>(x)); }
  void end_row();

 private:
  std::ostream& os_;
  size_t columns_;
  size_t filled_ = 0;
};

const std::vector<std::string>& decode_csv_header();
// One row per r.
void write_decode_rows(CsvWriter& w, int n, double rho, const DecodeResult& res);

}  // namespace mipt
