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

#include "qflip/capacity.hpp"

#include <algorithm>
#include <cmath>

namespace qflip {

double SmithSmolinEnvelope::dephasing_term(double p) { return 1.0 - binary_entropy(p); }

double SmithSmolinEnvelope::amplitude_damping_term(double p) {
  const double s = std::sqrt(1.0 - p);
  const double g = std::clamp(4.0 * s * (1.0 - s), 0.0, 1.0);
  return binary_entropy((1.0 - g) / 2.0) - binary_entropy(g / 2.0);
}

double SmithSmolinEnvelope::linear_term(double p) { return 1.0 - 4.0 * p; }

double SmithSmolinEnvelope::pointwise_min(double p) {
  return std::min({dephasing_term(p), amplitude_damping_term(p), linear_term(p)});
}

SmithSmolinEnvelope::SmithSmolinEnvelope(int grid_size) : grid_size_(grid_size) {
  if (grid_size < 1024) throw DomainError("SmithSmolinEnvelope: grid_size must be at least 1024");
  const double step = 1.0 / static_cast<double>(grid_size - 1);
  // Monotone chain, lower hull only; points arrive sorted by p.
  for (int k = 0; k < grid_size; ++k) {
    const double p = k == grid_size - 1 ? 1.0 : k * step;
    const std::pair<double, double> pt{p, pointwise_min(p)};
    while (hull_.size() >= 2) {
      const auto& [x1, y1] = hull_[hull_.size() - 2];
      const auto& [x2, y2] = hull_.back();
      const double cross = (x2 - x1) * (pt.second - y1) - (y2 - y1) * (pt.first - x1);
      if (cross > 0.0) break;
      hull_.pop_back();
    }
    hull_.push_back(pt);
  }
}

double SmithSmolinEnvelope::envelope(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("SmithSmolinEnvelope: p outside [0,1]");
  auto it = std::lower_bound(hull_.begin(), hull_.end(), p,
                             [](const std::pair<double, double>& a, double x) { return a.first < x; });
  if (it == hull_.begin()) return it->second;
  if (it == hull_.end()) return hull_.back().second;
  const auto& [x1, y1] = *(it - 1);
  const auto& [x2, y2] = *it;
  return y1 + (y2 - y1) * (p - x1) / (x2 - x1);
}

double SmithSmolinEnvelope::bound(double q) const {
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("smith_smolin_upper_bound: parameter outside [0,1]");
  return std::max(0.0, envelope(0.75 * q));
}

}  // namespace qflip
