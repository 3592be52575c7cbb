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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qflip::cli {

enum ExitCode : int { ok = 0, config_error = 1, io_error = 2, verification_failure = 3 };

/// Invalid command-line configuration; the message names the offending field.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string family;  // depolarising, dephasing_y, projection, random_bistochastic
  std::optional<std::string> channel_json;
  double q = 0.5;
  double p = 0.5;
  double theta = 0.0;
  std::vector<int> levels{0, 1};  // m, n for the projection family
  int d = 2;
  int unitaries = 3;              // random_bistochastic mixture size
  std::string control = "plus";   // plus, minus, zero, one
  std::string state = "plus";     // herald input: plus, zero, mixed, random
  std::string grid = "0:1:0.01";
  std::optional<std::string> out;
  std::uint64_t seed = 0xF11F;
  int grid_size = 8192;
  std::string format;  // empty: per-command default
  std::map<std::string, double> tolerances;
  std::size_t shots = 100000;
};

/// "a:b:s" with s > 0 and a <= b; endpoints included. Throws ConfigError.
std::vector<double> parse_grid(const std::string& text);

// Commands write their report to `out` and return an exit code. Invalid
// configuration throws ConfigError or a library DomainError/ValidationError.
int cmd_flip(const RunConfig& cfg, std::ostream& out);
int cmd_decompose(const RunConfig& cfg, std::ostream& out);
/// CSV of every quantity of the family over the grid (or JSON curves).
int cmd_capacities(const RunConfig& cfg, std::ostream& out);
int cmd_herald(const RunConfig& cfg, std::ostream& out);
/// JSON acceptance report; verification_failure if any check fails.
int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_nogo(const RunConfig& cfg, std::ostream& out);

/// Full entry point; returns the process exit code. Output goes to `out`
/// unless --out is given; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qflip::cli
