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

#include "qflip/labeled_channel.hpp"

#include <cmath>
#include <set>

namespace qflip {

LabeledRandomChannel::LabeledRandomChannel(std::vector<LabeledBranch> branches)
    : branches_(std::move(branches)) {
  if (branches_.empty()) throw ValidationError("labeled random channel has no branches");
  double total = 0.0;
  std::set<std::string> labels;
  for (const auto& b : branches_) {
    if (!(b.probability >= 0.0)) throw ValidationError("branch probability is negative");
    if (b.channel.dim_in() != dim_in() || b.channel.dim_out() != dim_out()) {
      throw DimensionError("branch channels have different dimensions");
    }
    if (!labels.insert(b.label).second) throw ValidationError("duplicate branch label: " + b.label);
    total += b.probability;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ValidationError("branch probabilities do not sum to 1");
}

const LabeledBranch* LabeledRandomChannel::find(const std::string& label) const {
  for (const auto& b : branches_)
    if (b.label == label) return &b;
  return nullptr;
}

KrausChannel LabeledRandomChannel::to_channel(RegisterBasis basis) const {
  const auto n = static_cast<Eigen::Index>(branches_.size());
  std::vector<Operator> kraus;
  for (Eigen::Index l = 0; l < n; ++l) {
    StateVector reg(n);
    if (basis == RegisterBasis::computational) {
      reg = ket(n, l);
    } else {
      for (Eigen::Index k = 0; k < n; ++k) {
        reg(k) = std::polar(1.0 / std::sqrt(static_cast<double>(n)),
                            2.0 * M_PI * static_cast<double>(l * k) / static_cast<double>(n));
      }
    }
    const auto& b = branches_[static_cast<std::size_t>(l)];
    if (b.probability == 0.0) continue;
    const double w = std::sqrt(b.probability);
    for (const auto& k : b.channel.kraus()) kraus.push_back(w * tensor_product(k, Operator(reg)));
  }
  return KrausChannel(std::move(kraus));
}

}  // namespace qflip
