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

#include <vector>

#include "qflip/channels.hpp"
#include "qflip/labeled_channel.hpp"

namespace qflip {

// Joint systems are ordered target ⊗ control throughout.

namespace tol {
inline constexpr double transposition_invariance = 1e-8;
inline constexpr double noiseless = 1e-9;
}  // namespace tol

/// F_i = C_i ⊗ |0><0| + C_i^T ⊗ |1><1| for each Kraus operator of a
/// bistochastic channel. Throws ValidationError on non-bistochastic input.
KrausChannel time_flip_kraus(const KrausChannel& ch);

/// rho -> F(C)(rho ⊗ omega), a channel from d to 2d.
KrausChannel flipped_channel(const KrausChannel& ch, const DensityMatrix& omega);

/// A base channel together with its time flip and a fixed control state.
struct FlippedChannel {
  KrausChannel base;
  DensityMatrix control_state;
  KrausChannel joint;  // time_flip_kraus(base), on target ⊗ control

  /// rho -> joint(rho ⊗ control_state).
  KrausChannel prepared() const;
};

FlippedChannel make_flipped(const KrausChannel& ch, const DensityMatrix& omega);

/// Fourier-basis measurement {|+><+|, |-><-|}.
std::vector<Operator> fourier_povm();

/// (I ⊗ M) F_omega(C), with M the quantum-to-classical channel of `povm`
/// writing outcome j into |j> of an N-level register (target ⊗ register).
KrausChannel effective_channel(const KrausChannel& ch, const DensityMatrix& omega,
                               const std::vector<Operator>& povm);

/// Kraus split into symmetric (K^T = K) and antisymmetric (K^T = -K) operators.
struct SymAntisymDecomposition {
  std::vector<Operator> sym;
  std::vector<Operator> antisym;
};

/// Splits a transposition-invariant channel into symmetric and antisymmetric
/// Kraus operators.
///
/// The Choi operator commutes with SWAP, so it is block diagonal on the
/// symmetric and antisymmetric subspaces of C^d ⊗ C^d. Each block is
/// diagonalised separately; an eigenvector |K>> of the +1 (-1) block gives a
/// symmetric (antisymmetric) K because SWAP|K>> = |K^T>>. Degenerate spectra
/// are handled by construction. Eigenvalues below tol::choi_rank are dropped,
/// operators are listed by decreasing weight, and each eigenvector's first
/// non-negligible component is made real positive.
///
/// Throws ValidationError if ||[Choi, SWAP]|| exceeds tol::transposition_invariance.
SymAntisymDecomposition sym_antisym_decomposition(const KrausChannel& ch);

/// Two-branch labeled channel {(w+, C+, "+"), (w-, C-, "-")} obtained by
/// preparing the control in |+> and measuring it in the Fourier basis.
/// Zero-weight branches are dropped.
///
/// Throws ValidationError if the channel is not transposition invariant, or if
/// the branch probability depends on the input (sum_sym K^†K not ∝ I).
LabeledRandomChannel canonical_effective(const KrausChannel& ch);

/// Measure the |+>-flipped output's control in the Fourier basis and
/// re-prepare omega on "+" or Z omega Z on "-".
KrausChannel reprepared_flip(const KrausChannel& ch, const DensityMatrix& omega);

enum class Outcome { plus, minus };

const char* to_string(Outcome o);

struct HeraldedOutcome {
  Outcome outcome;
  double probability;
  DensityMatrix conditional_state;
  bool noiseless;  // conditional channel has Choi rank 1
};

/// Outcomes of canonical_effective applied to rho, with conditional target states.
std::vector<HeraldedOutcome> heralded_transmit(const KrausChannel& ch, const DensityMatrix& rho);

/// Second-largest Choi eigenvalue (0 for Choi rank 1).
double choi_second_eigenvalue(const KrausChannel& ch);

/// Bob's correction for a flipped Y-dephasing channel: identity on "+",
/// conjugation by Y on "-". Qubit outcomes only.
DensityMatrix dephasing_decode(const HeraldedOutcome& outcome);

/// Per-outcome counts over `shots` independent draws.
std::vector<std::size_t> sample_outcomes(const std::vector<HeraldedOutcome>& outcomes,
                                         std::size_t shots, Rng& rng);

}  // namespace qflip
