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

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "experiments.hpp"
#include "mipt/common.hpp"

namespace mipt::cli {

namespace {

// Flag values kept as text until the config file has been applied, so that a
// flag given on the command line always wins over the same key in the file.
struct Flags {
  std::string config;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  CLI::Option* no_postselect = nullptr;
  CLI::Option* save_shots_opt = nullptr;
};

void add_options(CLI::App& sub, Flags& f) {
  sub.add_option("--config", f.config, "JSON config; flags override its keys");
  auto text = [&](const std::string& flag, const std::string& key, const std::string& help) {
    f.options[key] = sub.add_option(flag, f.values[key], help);
  };
  text("--seed", "seed", "master seed (required)");
  text("--workers", "workers", "threads; outputs do not depend on it");
  text("--out", "output", "output directory");
  text("--geometry", "geometry", "builtin name or geometry JSON path");
  text("--T", "T", "depth list, e.g. 3 or 1..8");
  text("--rho", "rho", "rate list or range lo..hi[:step]");
  text("--theta", "theta", "angle list, e.g. 0.1pi,2/5pi");
  text("--N", "N", "system-size list");
  text("--shots", "shots", "shots per circuit (or per random basis)");
  text("--instances", "instances", "circuit instances");
  text("--epsilon", "epsilon", "noise strength list");
  text("--chi", "chi", "bond dimension list");
  text("--cue", "cue", "random bases per state");
  text("--L", "L", "Floquet chain length");
  text("--realizations", "realizations", "field realizations");
  text("--shots-file", "shots_file", "JSONL shot records");
  text("--circuit-file", "circuit_file", "circuit JSON (object or array by circuit_id)");
  text("--backend", "backend", "exact or mps");
  f.no_postselect = sub.add_flag("--no-postselect", "keep the measured qubits unpostselected");
  f.save_shots_opt = sub.add_flag("--save-shots", "also write shot records and circuits");
}

nlohmann::json read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
}

int to_int(const std::string& key, const std::string& v) {
  const std::vector<int> xs = parse_int_list(v);
  if (xs.size() != 1) throw ConfigError("--" + key + " takes one integer");
  return xs[0];
}

ExperimentConfig build_config(const std::string& experiment, const Flags& f) {
  ExperimentConfig c;
  if (!f.config.empty()) c = config_from_json(read_config_file(f.config));
  c.experiment = experiment;
  auto given = [&](const std::string& key) { return f.options.at(key)->count() > 0; };
  auto val = [&](const std::string& key) { return f.values.at(key); };
  if (given("seed")) {
    const std::string s = val("seed");
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw ConfigError("--seed must be a non-negative integer");
    try {
      c.seed = std::stoull(s);
    } catch (const std::exception&) {
      throw ConfigError("--seed out of range");
    }
  }
  if (given("workers")) c.workers = to_int("workers", val("workers"));
  if (given("output")) c.output = val("output");
  if (given("geometry")) c.geometry = val("geometry");
  if (given("T")) c.depths = parse_int_list(val("T"));
  if (given("rho")) c.rho = parse_real_list(val("rho"));
  if (given("theta")) c.theta = parse_angle_list(val("theta"));
  if (given("N")) c.sizes = parse_int_list(val("N"));
  if (given("shots")) c.shots = to_int("shots", val("shots"));
  if (given("instances")) c.instances = to_int("instances", val("instances"));
  if (given("epsilon")) c.epsilon = parse_real_list(val("epsilon"));
  if (given("chi")) c.chi = parse_int_list(val("chi"));
  if (given("cue")) c.cue = to_int("cue", val("cue"));
  if (given("L")) c.L = to_int("L", val("L"));
  if (given("realizations")) c.realizations = to_int("realizations", val("realizations"));
  if (given("shots_file")) c.shots_file = val("shots_file");
  if (given("circuit_file")) c.circuit_file = val("circuit_file");
  if (given("backend")) c.backend = val("backend");
  if (f.no_postselect->count() > 0) c.postselect = false;
  if (f.save_shots_opt->count() > 0) c.save_shots = true;
  return finalize(c);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Measurement-induced entanglement experiments: simulation, randomized measurements, decoding"};
  app.require_subcommand(1);
  std::map<std::string, Flags> flags;
  for (const auto& name : experiment_names()) add_options(*app.add_subcommand(name), flags[name]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  std::string experiment;
  for (const auto* sub : app.get_subcommands()) experiment = sub->get_name();
  ExperimentConfig c;
  try {
    c = build_config(experiment, flags.at(experiment));
  } catch (const ConfigError& e) {
    err << "mipt: config error: " << e.what() << "\n";
    return kExitConfig;
  }
  try {
    const RunReport r = run_experiment(c, err);
    for (const auto& file : r.files) out << c.output << "/" << file << "\n";
    out << c.output << "/manifest.json\n";
  } catch (const ConfigError& e) {
    err << "mipt: config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "mipt: " << experiment << " failed: " << e.what() << "\n";
    return kExitSimulation;
  }
  return kExitOk;
}

}  // namespace mipt::cli
