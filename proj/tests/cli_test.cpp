// Copyright 2026 The qflip Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qflip/cli.hpp"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "qflip/capacity.hpp"
#include "qflip/json_io.hpp"
#include "qflip/verify.hpp"

using namespace qflip;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(QFLIP_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("qflip_cli_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// quantity -> parameter string -> value string
std::map<std::string, std::map<std::string, std::string>> parse_csv(const std::string& text, int* rows) {
  std::map<std::string, std::map<std::string, std::string>> table;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  *rows = 0;
  while (std::getline(in, line)) {
    std::stringstream f(line);
    std::string parameter, quantity, value;
    std::getline(f, parameter, ',');
    std::getline(f, quantity, ',');
    std::getline(f, value, ',');
    table[quantity][parameter] = value;
    ++*rows;
  }
  return table;
}

double h2(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

}  // namespace

TEST(cli, parse_grid) {
  const auto g = cli::parse_grid("0:1:0.01");
  ASSERT_EQ(g.size(), 101u);
  EXPECT_EQ(g[7], 0.07);
  EXPECT_EQ(g.back(), 1.0);
  EXPECT_EQ(cli::parse_grid("0.5:0.5:0.1").size(), 1u);
  EXPECT_THROW(cli::parse_grid("1:0:0.1"), cli::ConfigError);
  EXPECT_THROW(cli::parse_grid("0:1:0"), cli::ConfigError);
  EXPECT_THROW(cli::parse_grid("0:1"), cli::ConfigError);
  EXPECT_THROW(cli::parse_grid(""), cli::ConfigError);
  EXPECT_THROW(cli::parse_grid("a:b:c"), cli::ConfigError);
}

TEST(cli, capacities_depolarising_csv) {
  const auto r = run("capacities --family depolarising --grid 0:1:0.01");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "parameter,quantity,value,family,d,formula");
  int rows = 0;
  auto table = parse_csv(r.out, &rows);
  EXPECT_EQ(table["C"].size(), 101u);
  EXPECT_EQ(rows, 5 * 101);
  EXPECT_NEAR(std::stod(table["C_flipped"]["1"]), 0.311278, 1e-6);
  for (const auto& [q, v] : table["C_flipped"]) EXPECT_GE(std::stod(v), std::stod(table["C"][q]));
}

TEST(cli, capacities_dephasing_csv) {
  const auto r = run("capacities --family dephasing --grid 0:1:0.01");
  ASSERT_EQ(r.code, 0);
  int rows = 0;
  auto table = parse_csv(r.out, &rows);
  EXPECT_EQ(rows, 2 * 101);
  for (const auto& [p, v] : table["Q"]) EXPECT_NEAR(std::stod(v), 1.0 - h2(std::stod(p)), 1e-11);
  for (const auto& [p, v] : table["Q_flipped"]) EXPECT_EQ(v, "1");
}

TEST(cli, capacities_json_format) {
  const auto r = run("capacities --family depolarising --grid 0:1:0.5 --d 3 --format json");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["curves"].size(), 5u);
  EXPECT_EQ(j["curves"][4]["quantity"], "chi_flipped");
  EXPECT_EQ(j["curves"][4]["formula"], "holevo_flipped_depolarising_general");
}

TEST(cli, csv_roundtrip_at_12_digits) {
  const auto r = run("capacities --family depolarising --grid 0:1:0.01");
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::stringstream f(line);
    std::string parameter, quantity, value;
    std::getline(f, parameter, ',');
    std::getline(f, quantity, ',');
    std::getline(f, value, ',');
    EXPECT_EQ(format_value(std::stod(value)), value);
    EXPECT_EQ(format_value(std::stod(parameter)), parameter);
  }
}

TEST(cli, identical_config_gives_identical_bytes) {
  const std::string a = temp_path("a.csv"), b = temp_path("b.csv");
  ASSERT_EQ(run("capacities --family depolarising --grid 0:1:0.001 --out " + a).code, 0);
  ASSERT_EQ(run("capacities --family depolarising --grid 0:1:0.001 --out " + b).code, 0);
  EXPECT_FALSE(slurp(a).empty());
  EXPECT_EQ(slurp(a), slurp(b));
  const auto h1 = run("herald --family random_bistochastic --d 2 --unitaries 1 --state random --seed 5 --shots 1000");
  const auto h2r = run("herald --family random_bistochastic --d 2 --unitaries 1 --state random --seed 5 --shots 1000");
  EXPECT_EQ(h1.out, h2r.out);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST(cli, config_errors_exit_1) {
  EXPECT_EQ(run("capacities --family depolarising --grid 1:0:0.1").code, 1);
  EXPECT_EQ(run("capacities --family depolarising --grid 0:1:0").code, 1);
  EXPECT_EQ(run("capacities --family amplitude").code, 1);
  EXPECT_EQ(run("capacities").code, 1);
  EXPECT_EQ(run("capacities --family depolarising --grid-size 10").code, 1);
  EXPECT_EQ(run("flip --family depolarising --q 1.5").code, 1);
  EXPECT_EQ(run("flip --family depolarising --format csv").code, 1);
  EXPECT_EQ(run("verify --tol nonsense=1").code, 1);
  EXPECT_EQ(run("--no-such-flag").code, 1);
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("decompose --family random_bistochastic --d 3").code, 1);
}

TEST(cli, io_errors_exit_2) {
  EXPECT_EQ(run("capacities --family depolarising --out /nonexistent-dir/x.csv").code, 2);
  EXPECT_EQ(run("flip --channel-json /nonexistent-dir/ch.json").code, 2);
}

TEST(cli, flip_output_loads_as_channel) {
  const auto r = run("flip --family dephasing_y --p 0.25");
  ASSERT_EQ(r.code, 0);
  const KrausChannel flipped = io::channel_from_json(json::parse(r.out));
  EXPECT_EQ(flipped.dim_in(), 2);
  EXPECT_EQ(flipped.dim_out(), 4);
}

TEST(cli, decompose_from_channel_json) {
  const std::string path = temp_path("channel.json");
  {
    std::ofstream out(path);
    out << io::channel_to_json(depolarising(1.0, 2)).dump();
  }
  const auto r = run("decompose --channel-json " + path);
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["sym"].size(), 3u);
  EXPECT_EQ(j["antisym"].size(), 1u);
  EXPECT_TRUE(j["labeled"].get<bool>());
  EXPECT_NEAR(j["branches"][1]["probability"].get<double>(), 0.25, 1e-12);
  std::filesystem::remove(path);
}

TEST(cli, herald_depolarising) {
  const auto r = run("herald --family depolarising --q 1 --shots 100000");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  ASSERT_EQ(j["outcomes"].size(), 2u);
  const auto& minus = j["outcomes"][1];
  EXPECT_EQ(minus["outcome"], "-");
  EXPECT_NEAR(minus["probability"].get<double>(), 0.25, 1e-12);
  EXPECT_TRUE(minus["noiseless"].get<bool>());
  EXPECT_NEAR(minus["count"].get<double>() / 100000.0, 0.25, 3.0 * std::sqrt(0.25 * 0.75 / 100000.0));
}

TEST(cli, nogo_report) {
  const auto r = run("nogo --family projection --theta 0.3 --levels 0,2 --d 3");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_LE(j["sym_chan_flip_identity"].get<double>(), 1e-9);
  ASSERT_EQ(j["reports"].size(), 6u);
  EXPECT_EQ(j["reports"][0]["verdict"], "pass");
  EXPECT_EQ(j["reports"][1]["verdict"], "inconclusive");
  EXPECT_EQ(j["reports"][2]["verdict"], "pass");
  EXPECT_EQ(j["reports"][3]["verdict"], "pass");
  EXPECT_EQ(j["reports"][4]["verdict"], "inconclusive");
  EXPECT_EQ(j["reports"][5]["verdict"], "pass");
  EXPECT_EQ(run("nogo --family dephasing_y --p 0.3").code, 1);
}

TEST(cli, verify_default_passes) {
  const std::string path = temp_path("verify.json");
  const auto r = run("verify --out " + path);
  EXPECT_EQ(r.code, 0);
  const json j = json::parse(slurp(path));
  EXPECT_TRUE(j["passed"].get<bool>());
  std::set<int> criteria;
  for (const auto& c : j["checks"]) {
    criteria.insert(c["criterion"].get<int>());
    EXPECT_TRUE(c.contains("expected"));
    EXPECT_TRUE(c.contains("actual"));
    EXPECT_TRUE(c.contains("tolerance"));
  }
  EXPECT_EQ(criteria.size(), 10u);
  std::filesystem::remove(path);
}

TEST(cli, verify_over_tight_tolerance_fails_with_exit_3) {
  const auto r = run("verify --tol choi_roundtrip=1e-15");
  EXPECT_EQ(r.code, 3);
  const json j = json::parse(r.out);
  EXPECT_FALSE(j["passed"].get<bool>());
  int failed = 0;
  for (const auto& c : j["checks"]) {
    if (!c["passed"].get<bool>()) {
      ++failed;
      EXPECT_EQ(c["name"], "choi_roundtrip_distance");
      EXPECT_EQ(c["tolerance"].get<double>(), 1e-15);
    }
  }
  EXPECT_EQ(failed, 1);
}

TEST(cli, seed_does_not_change_closed_form_checks) {
  VerifyOptions a, b;
  a.holevo_restarts = b.holevo_restarts = 3;
  b.seed = 12345;
  const auto ra = run_acceptance(a);
  const auto rb = run_acceptance(b);
  ASSERT_EQ(ra.checks.size(), rb.checks.size());
  for (std::size_t k = 0; k < ra.checks.size(); ++k) {
    const auto& ca = ra.checks[k];
    const auto& cb = rb.checks[k];
    EXPECT_EQ(ca.name, cb.name);
    EXPECT_EQ(ca.passed, cb.passed) << ca.name;
    if (ca.criterion == 2 || ca.criterion == 3 || ca.criterion == 4 || ca.criterion == 9) {
      EXPECT_EQ(ca.actual, cb.actual) << ca.name;
    }
  }
}
