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
#include <map>
#include <string>
#include <vector>

namespace qflip {

enum class Relation {
  equal,     // |actual - expected| <= tolerance
  at_least,  // actual >= expected - tolerance
  at_most,   // actual <= expected + tolerance
  greater,   // actual > expected
};

const char* to_string(Relation r);

struct CheckResult {
  int criterion;
  std::string name;
  std::string tolerance_key;
  Relation relation;
  double expected;
  double actual;
  double tolerance;
  bool passed;
};

struct VerifyOptions {
  std::uint64_t seed = 0xF11F;
  std::size_t shots = 100000;
  int envelope_grid_size = 8192;
  int holevo_restarts = 100;
  std::map<std::string, double> tolerance_overrides;
};

struct VerifyReport {
  std::uint64_t seed;
  std::vector<CheckResult> checks;

  bool passed() const;
  bool criterion_passed(int criterion) const;
};

/// Tolerance keys accepted by VerifyOptions::tolerance_overrides, with defaults.
const std::map<std::string, double>& default_tolerances();

/// Runs the ten acceptance criteria. Throws DomainError on an unknown override key.
VerifyReport run_acceptance(const VerifyOptions& opts = {});

/// {"seed", "passed", "checks": [{criterion, name, relation, expected, actual, tolerance, passed}]}.
std::string report_to_json(const VerifyReport& report);

}  // namespace qflip
