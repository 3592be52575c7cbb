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

#include <string>
#include <vector>

#include "qflip/channels.hpp"

namespace qflip {

struct LabeledBranch {
  double probability;
  KrausChannel channel;
  std::string label;
};

/// How the classical label is written into the output register.
enum class RegisterBasis {
  computational,  // label l -> |l>
  fourier,        // label l -> l-th discrete Fourier vector (|+>, |-> for two labels)
};

/// sum_l p_l C_l(rho) ⊗ |l><l|: a probabilistic mixture of channels whose
/// branch index is recorded classically.
class LabeledRandomChannel {
 public:
  /// Probabilities must be nonnegative and sum to 1 within 1e-12; branches
  /// share dimensions; labels are distinct.
  explicit LabeledRandomChannel(std::vector<LabeledBranch> branches);

  const std::vector<LabeledBranch>& branches() const noexcept { return branches_; }
  Eigen::Index dim_in() const { return branches_.front().channel.dim_in(); }
  Eigen::Index dim_out() const { return branches_.front().channel.dim_out(); }

  /// The branch with the given label, or nullptr.
  const LabeledBranch* find(const std::string& label) const;

  /// Ordinary channel on target ⊗ register (register dimension = branch count).
  KrausChannel to_channel(RegisterBasis basis = RegisterBasis::computational) const;

 private:
  std::vector<LabeledBranch> branches_;
};

}  // namespace qflip
