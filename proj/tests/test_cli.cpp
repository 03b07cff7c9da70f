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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "experiments.hpp"
#include "mipt/common.hpp"
#include "mipt/io.hpp"

using namespace mipt;
using namespace mipt::cli;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out, err;
};

CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "mipt");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string dir(const std::string& stem) {
  const std::string d = ::testing::TempDir() + "mipt_cli_" + stem;
  fs::remove_all(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

// Column `name` of a CSV as doubles.
std::vector<double> column(const fs::path& p, const std::string& name) {
  std::istringstream in(slurp(p));
  std::string line, cell;
  std::getline(in, line);
  int idx = -1, i = 0;
  std::istringstream h(line);
  while (std::getline(h, cell, ',')) {
    if (cell == name) idx = i;
    ++i;
  }
  EXPECT_GE(idx, 0) << name;
  std::vector<double> out;
  while (std::getline(in, line)) {
    std::istringstream r(line);
    for (int k = 0; k <= idx; ++k) std::getline(r, cell, ',');
    out.push_back(std::stod(cell));
  }
  return out;
}

}  // namespace

TEST(Parse, Angles) {
  EXPECT_NEAR(parse_angle("0.4pi"), 0.4 * kPi, 1e-15);
  EXPECT_NEAR(parse_angle("2/5pi"), 0.4 * kPi, 1e-15);
  EXPECT_NEAR(parse_angle("pi/2"), kPi / 2, 1e-15);
  EXPECT_NEAR(parse_angle("pi"), kPi, 1e-15);
  EXPECT_NEAR(parse_angle(" 1.25 "), 1.25, 1e-15);
  EXPECT_THROW(parse_angle("pie"), ConfigError);
  EXPECT_THROW(parse_angle("1/0pi"), ConfigError);
  EXPECT_THROW(parse_angle(""), ConfigError);
}

TEST(Parse, RangesAndLists) {
  const auto r = parse_real_list("0.3..1.0");
  ASSERT_EQ(r.size(), 8u);
  EXPECT_EQ(r.front(), 0.3);
  EXPECT_EQ(r[4], 0.7);  // rounded, not 0.7000000000000001
  EXPECT_EQ(r.back(), 1.0);
  EXPECT_EQ(parse_real_list("0..1:0.25").size(), 5u);
  EXPECT_EQ(parse_real_list("0.1, 0.2").size(), 2u);
  EXPECT_EQ(parse_int_list("1..8").size(), 8u);
  EXPECT_EQ(parse_int_list("12,24"), (std::vector<int>{12, 24}));
  EXPECT_THROW(parse_real_list("1..0"), ConfigError);
  EXPECT_THROW(parse_int_list("1.5"), ConfigError);
  EXPECT_THROW(parse_real_list("a,b"), ConfigError);
}

TEST(Config, JsonRoundTrip) {
  ExperimentConfig c = config_from_json(nlohmann::json::parse(
      R"({"experiment": "fig4-decode", "seed": 5, "N": [12, 24], "rho": "0.3..0.5", "theta": "0.1pi", "T": 5})"));
  c = finalize(c);
  EXPECT_EQ(c.rho.size(), 3u);
  EXPECT_EQ(c.shots, 200);
  const ExperimentConfig back = finalize(config_from_json(config_to_json(c)));
  EXPECT_EQ(config_to_json(back), config_to_json(c));
}

TEST(Config, UnknownKeyExitsTwo) {
  const std::string d = dir("unknown");
  fs::create_directories(d);
  write(d + "/c.json", R"({"seed": 1, "shotz": 10})");
  const CliResult r = run({"noisy-haar", "--config", d + "/c.json", "--out", d + "/o"});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("shotz"), std::string::npos) << r.err;
}

TEST(Config, MissingSeedExitsTwo) {
  const CliResult r = run({"noisy-haar", "--out", dir("noseed")});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("seed"), std::string::npos);
}

TEST(Config, BadValuesExitTwo) {
  EXPECT_EQ(run({"spectral", "--seed", "1", "--L", "9"}).code, kExitConfig);
  EXPECT_EQ(run({"fig4-decode", "--seed", "1", "--rho", "0.5..2"}).code, kExitConfig);
  EXPECT_EQ(run({"fig3-shallow", "--seed", "1", "--geometry", "nowhere"}).code, kExitConfig);
  EXPECT_EQ(run({"decode-external", "--seed", "1"}).code, kExitConfig);
  EXPECT_EQ(run({"warp-drive", "--seed", "1"}).code, kExitConfig);
  EXPECT_EQ(run({"noisy-haar", "--seed", "-3"}).code, kExitConfig);
}

TEST(Config, FlagsOverrideFile) {
  const std::string d = dir("override");
  fs::create_directories(d);
  write(d + "/c.json", R"({"seed": 1, "epsilon": [0.1, 0.2], "instances": 3, "N": 4})");
  const CliResult r = run({"noisy-haar", "--config", d + "/c.json", "--epsilon", "0.05", "--out", d + "/o"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(column(d + "/o/noisy_haar_slope.csv", "epsilon"), std::vector<double>{0.05});
  const auto m = nlohmann::json::parse(slurp(d + "/o/manifest.json"));
  EXPECT_EQ(m["config"]["instances"], 3);
  EXPECT_EQ(m["config"]["seed"], 1);
}

TEST(Run, OutputsIgnoreWorkerCount) {
  const std::string a = dir("w1"), b = dir("w3");
  const std::vector<std::string> common = {"fig2-dual", "--seed", "11", "--N", "6", "--T", "3", "--instances", "4",
                                           "--shots", "40", "--cue", "4"};
  auto with = [&](const std::string& out, const std::string& w) {
    auto v = common;
    v.insert(v.end(), {"--out", out, "--workers", w});
    return v;
  };
  ASSERT_EQ(run(with(a, "1")).code, kExitOk);
  ASSERT_EQ(run(with(b, "3")).code, kExitOk);
  for (const char* f : {"fig2_entropy.csv", "fig2_halfcut.csv"}) EXPECT_EQ(slurp(fs::path(a) / f), slurp(fs::path(b) / f)) << f;
}

TEST(Run, ManifestHashesFiles) {
  const std::string d = dir("manifest");
  const CliResult r = run({"spectral", "--seed", "2", "--L", "6", "--realizations", "5", "--out", d});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto m = nlohmann::json::parse(slurp(d + "/manifest.json"));
  ASSERT_TRUE(m["files"].contains("spectral.csv"));
  EXPECT_EQ(m["files"]["spectral.csv"], git_blob_sha1(slurp(d + "/spectral.csv")));
  EXPECT_GE(m["wall_time_s"].get<double>(), 0.0);
  EXPECT_EQ(git_blob_sha1(""), "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
  EXPECT_EQ(git_blob_sha1("hello\n"), "ce013625030ba8dba906f756967f9e9ca394464a");
}

TEST(Run, DecodeExternalMatchesInProcess) {
  const std::string d = dir("external");
  CliResult r = run({"fig4-decode", "--seed", "4", "--N", "12", "--rho", "1", "--instances", "4", "--shots", "15",
               "--save-shots", "--out", d});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const std::string shots = d + "/shots_N12_rho1.jsonl", circuits = d + "/circuits_N12_rho1.json";
  r = run({"decode-external", "--seed", "4", "--geometry", "n12", "--shots-file", shots, "--circuit-file", circuits,
           "--out", d + "/x"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(column(d + "/decode.csv", "zeta"), column(d + "/x/decode_external.csv", "zeta"));
  const auto a = column(d + "/decode.csv", "zeta_sim"), b = column(d + "/x/decode_external.csv", "zeta_sim");
  ASSERT_EQ(a.size(), b.size());
  // Stored gate entries carry 12 significant digits.
  for (size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-9);

  // The MPS backend at a bond dimension past the exact one reproduces it.
  r = run({"decode-external", "--seed", "4", "--geometry", "n12", "--shots-file", shots, "--circuit-file", circuits,
           "--backend", "mps", "--chi", "256", "--out", d + "/m"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(column(d + "/x/decode_external.csv", "zeta"), column(d + "/m/decode_external.csv", "zeta"));
  const auto c = column(d + "/m/decode_external.csv", "zeta_sim");
  for (size_t i = 0; i < b.size(); ++i) EXPECT_NEAR(b[i], c[i], 1e-9);
}

TEST(Run, TruncatedShotsExitOneWithLine) {
  const std::string d = dir("truncated");
  ASSERT_EQ(run({"fig4-decode", "--seed", "4", "--N", "12", "--rho", "1", "--instances", "1", "--shots", "3",
                 "--save-shots", "--out", d})
                .code,
            kExitOk);
  std::string text = slurp(d + "/shots_N12_rho1.jsonl");
  write(d + "/cut.jsonl", text.substr(0, text.size() - 8));
  const CliResult r = run({"decode-external", "--seed", "4", "--geometry", "n12", "--shots-file", d + "/cut.jsonl",
                     "--circuit-file", d + "/circuits_N12_rho1.json", "--out", d + "/x"});
  EXPECT_EQ(r.code, kExitSimulation);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST(Run, RecordWidthMismatchExitsOne) {
  const std::string d = dir("width");
  ASSERT_EQ(run({"fig4-decode", "--seed", "4", "--N", "12", "--rho", "1", "--instances", "1", "--shots", "2",
                 "--save-shots", "--out", d})
                .code,
            kExitOk);
  const CliResult r = run({"decode-external", "--seed", "4", "--geometry", "n24", "--shots-file",
                     d + "/shots_N12_rho1.jsonl", "--circuit-file", d + "/circuits_N12_rho1.json", "--out", d + "/x"});
  EXPECT_EQ(r.code, kExitSimulation);
}

TEST(Run, ShallowNoPostselectionHasNoLongRangeInformation) {
  const std::string d = dir("shallow");
  const CliResult r = run({"fig3-shallow", "--seed", "6", "--T", "1", "--instances", "2", "--no-postselect", "--out", d});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto i2 = column(d + "/fig3_mi.csv", "i2");
  // After one cycle the pairs 3 sites apart have disjoint light cones.
  EXPECT_NEAR(i2.back(), 0.0, 1e-9);
}
