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

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace mipt::cli {

// Exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitSimulation = 1;
inline constexpr int kExitConfig = 2;

const std::vector<std::string>& experiment_names();

// Every knob of every experiment. Fields an experiment does not read are
// ignored by it but still echoed in the manifest.
struct ExperimentConfig {
  std::string experiment;
  std::optional<uint64_t> seed;
  std::string output = "out";
  int workers = 1;

  std::string geometry = "grid19";
  std::vector<int> depths;      // T
  std::vector<double> rho;
  std::vector<double> theta;    // radians
  std::vector<int> sizes;       // N
  std::vector<double> epsilon;
  std::vector<int> chi;
  int shots = -1;               // -1: experiment default
  int instances = -1;
  int cue = 5;                  // random-basis instances per circuit
  int L = 10;
  int realizations = 1000;
  bool postselect = true;
  bool save_shots = false;

  std::string shots_file;
  std::string circuit_file;
  std::string backend = "exact";
};

// "0.4pi", "2/5pi", "pi/2", "pi", or a plain number of radians. The
// coefficient is read as a fraction before multiplying by pi.
double parse_angle(const std::string& s);
// "a,b,c" or "lo..hi" or "lo..hi:step" (step 0.1 by default). Range points
// are lo + k step, rounded to 12 significant digits.
std::vector<double> parse_real_list(const std::string& s);
std::vector<double> parse_angle_list(const std::string& s);
// "a,b" or "lo..hi" with unit step.
std::vector<int> parse_int_list(const std::string& s);

// Keys mirror the field names; "T" and "N" name depths and sizes. Unknown
// keys and type errors raise ConfigError.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);

// Fills experiment defaults and checks ranges; throws ConfigError.
ExperimentConfig finalize(ExperimentConfig c);

struct RunReport {
  std::vector<std::string> files;  // written data files, relative to output
  double wall_seconds = 0.0;
};

// Runs a finalized config, writes its data files and manifest.json into
// c.output. Throws ConfigError for inputs that only turn out invalid once
// read (missing files, unknown geometry); anything else is a simulation error.
RunReport run_experiment(const ExperimentConfig& c, std::ostream& log);

// Git blob hash: SHA-1 of "blob <size>\0" followed by the content.
std::string git_blob_sha1(const std::string& content);

// Full command-line entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mipt::cli
