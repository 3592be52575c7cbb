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

// Runs the ten acceptance criteria and prints one line per criterion.
#include <chrono>
#include <cstdio>
#include <string>

#include "qflip/verify.hpp"

int main() {
  const auto start = std::chrono::steady_clock::now();
  const qflip::VerifyReport report = qflip::run_acceptance();
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  int failed = 0;
  for (int criterion = 1; criterion <= 10; ++criterion) {
    const bool ok = report.criterion_passed(criterion);
    std::string detail;
    for (const auto& c : report.checks) {
      if (c.criterion != criterion) continue;
      char buf[256];
      std::snprintf(buf, sizeof buf, "%s%s=%.6g(%s %.3g)", detail.empty() ? "" : " ", c.name.c_str(), c.actual,
                    qflip::to_string(c.relation), c.tolerance);
      detail += buf;
      if (!c.passed) detail += "[FAILED]";
    }
    std::printf("criterion %2d: %s  %s\n", criterion, ok ? "PASS" : "FAIL", detail.c_str());
    if (!ok) ++failed;
  }
  std::printf("%d/10 criteria passed in %.1f s\n", 10 - failed, seconds);
  return failed == 0 ? 0 : 1;
}
