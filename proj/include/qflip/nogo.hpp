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
#include <functional>
#include <string>

#include "qflip/channels.hpp"

namespace qflip {

namespace tol {
inline constexpr double sym_flip = 1e-9;
inline constexpr double fd_step = 1e-4;         // radians, central differences
inline constexpr double vanishing_derivative = 1e-6;
inline constexpr double fixed_output = 1e-8;
inline constexpr double constant_output = 1e-8;
}  // namespace tol

enum class Verdict { pass, fail, inconclusive };

const char* to_string(Verdict v);

/// Outcome of a numerical check of the projection-channel lemma or the
/// no-side-channel theorem. Evidence on sampled instances, not a proof.
///
/// For fixed_output_check, `max_derivative_norm` is the largest θ-derivative
/// over the projection family and `fixed_output_distance` compares
/// decode(C0(rho)) with decode(I/d). For side_channel_scan they hold the
/// largest pairwise Choi distance between sampled outputs and the distance of
/// the common output from a constant channel.
///
/// `hypothesis_met` records whether the premise held; the verdict is
/// inconclusive when it did not.
struct LemmaReport {
  std::string family;
  double max_derivative_norm = 0.0;
  double fixed_output_distance = 0.0;
  bool hypothesis_met = false;
  Verdict verdict = Verdict::inconclusive;
};

/// Choi distance between F_omega(C) and rho -> C(rho) ⊗ omega. No validation.
double flip_identity_distance(const KrausChannel& ch, const DensityMatrix& omega);

/// As flip_identity_distance, after checking every Kraus operator is
/// symmetric within 1e-9. Throws ValidationError otherwise.
double sym_chan_flip_identity(const KrausChannel& ch, const DensityMatrix& omega);

/// Differentiates decode(C_{θ,m,n}(rho)) over a θ grid for all m < n; if the
/// derivatives vanish, decode(C0(rho)) must equal decode(I/d).
LemmaReport fixed_output_check(const KrausChannel& decode, const DensityMatrix& rho, Eigen::Index d,
                               const std::string& family = "decoder");

using Supermap = std::function<KrausChannel(const KrausChannel&)>;

/// Applies `supermap` to random bistochastic channels on C^d. If every output
/// agrees (pairwise Choi distance ≤ 1e-8), the common output must be a
/// constant channel, i.e. zero capacity.
LemmaReport side_channel_scan(const Supermap& supermap, Eigen::Index d, int samples, std::uint64_t seed,
                              const std::string& family = "supermap");

}  // namespace qflip
