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
#include <random>
#include <vector>

#include "qflip/qmat.hpp"

namespace qflip {

namespace tol {
inline constexpr double cptp = 1e-9;
inline constexpr double channel_equal = 1e-9;
inline constexpr double choi_rank = 1e-10;
}  // namespace tol

/// Completely positive trace-preserving map rho -> sum_i K_i rho K_i^†.
///
/// Kraus operators are dim_out x dim_in. Construction checks shape consistency
/// and trace preservation (sum K^†K = I within tol::cptp) and throws
/// ValidationError naming the failed invariant.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<Operator> kraus);

  Eigen::Index dim_in() const noexcept { return dim_in_; }
  Eigen::Index dim_out() const noexcept { return dim_out_; }
  const std::vector<Operator>& kraus() const noexcept { return kraus_; }
  bool is_square() const noexcept { return dim_in_ == dim_out_; }

  /// Applies the map to any dim_in x dim_in operator (linear extension).
  Operator apply(const Operator& x) const;

 private:
  std::vector<Operator> kraus_;
  Eigen::Index dim_in_ = 0;
  Eigen::Index dim_out_ = 0;
};

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);

/// sum K^†K - I and sum K K^† - I, max-abs-entry deviations.
double trace_preservation_deviation(const std::vector<Operator>& kraus);
double unitality_deviation(const std::vector<Operator>& kraus);

bool is_bistochastic(const KrausChannel& ch, double tolerance = tol::cptp);

/// Choi operator (C ⊗ I)(|I>><<I|) with |I>> = sum_n |n>⊗|n>; output factor first.
/// Entry ((a, b), (a', b')) = sum_i K_i(a, b) conj(K_i(a', b')).
class ChoiMatrix {
 public:
  /// Validates positivity (tol::psd) and tr_out = I_in (tol::cptp).
  ChoiMatrix(Operator op, Eigen::Index dim_out, Eigen::Index dim_in);

  const Operator& op() const noexcept { return op_; }
  Eigen::Index dim_out() const noexcept { return dim_out_; }
  Eigen::Index dim_in() const noexcept { return dim_in_; }

 private:
  Operator op_;
  Eigen::Index dim_out_;
  Eigen::Index dim_in_;
};

/// Row-major vectorisation |K>> = (K ⊗ I)|I>>.
StateVector double_ket(const Operator& k);
Operator from_double_ket(const StateVector& v, Eigen::Index dim_out, Eigen::Index dim_in);

/// Raw Choi sum over an arbitrary (not necessarily trace-preserving) Kraus list.
Operator choi_sum(const std::vector<Operator>& kraus);

ChoiMatrix choi_of_channel(const KrausChannel& ch);

/// Kraus extraction from the Choi spectrum; eigenvalues below tol::choi_rank are dropped.
KrausChannel channel_of_choi(const ChoiMatrix& c);

/// Operator 2-norm of the Choi difference. Dimensions must agree.
double choi_distance(const KrausChannel& a, const KrausChannel& b);
bool channels_equal(const KrausChannel& a, const KrausChannel& b,
                    double tolerance = tol::channel_equal);

/// Kraus-wise transpose in the computational basis (input-output inversion with U = I).
KrausChannel transpose_channel(const KrausChannel& ch);

/// Kraus-wise adjoint. Requires a bistochastic input.
///
/// Kept for comparison only: unlike the transpose, the adjoint is not an
/// admissible transformation of channels (it is not completely positive when
/// applied to part of a bipartite channel).
KrausChannel adjoint_inversion(const KrausChannel& ch);

/// SWAP Choi SWAP for square channels; equals the Choi of the transpose channel.
Operator swapped_choi(const KrausChannel& ch);

/// || [Choi, SWAP] ||; zero iff the channel equals its transpose.
double transposition_asymmetry(const KrausChannel& ch);

// Composition helpers.
KrausChannel compose(const KrausChannel& second, const KrausChannel& first);
KrausChannel tensor(const KrausChannel& a, const KrausChannel& b);
KrausChannel unitary_channel(const Operator& u);
KrausChannel identity_channel(Eigen::Index d);

/// rho -> tr(rho) sigma.
KrausChannel constant_channel(const DensityMatrix& sigma, Eigen::Index dim_in);

/// Discards the `discard` factor of a bipartite system.
KrausChannel partial_trace_channel(Eigen::Index dim_a, Eigen::Index dim_b, Subsystem keep);

/// rho -> rho ⊗ omega (state injection on the right).
KrausChannel append_state_channel(Eigen::Index dim_in, const DensityMatrix& omega);

// Named families.

/// rho -> q I/d + (1-q) rho, defined through its Choi operator
/// (q/d) I⊗I + (1-q)|I>><<I| and Kraus-extracted.
KrausChannel depolarising(double q, Eigen::Index d);

/// Qubit Pauli form with weights (1 - 3q/4, q/4, q/4, q/4) on (I, X, Y, Z).
KrausChannel depolarising_pauli(double q);

/// {sqrt(q/d) |j><i|} ∪ {sqrt(1-q) I}.
KrausChannel depolarising_matrix_units(double q, Eigen::Index d);

/// (1-p) rho + p Y rho Y.
KrausChannel dephasing_y(double p);

/// (1-p) rho + p Z rho Z.
KrausChannel dephasing_z(double p);

/// Projectors P_{theta,m,n,0}, P_{theta,m,n,1} on span{|m>,|n>} plus I - I_{m,n}.
std::vector<Operator> projection_kraus(double theta, Eigen::Index m, Eigen::Index n, Eigen::Index d);
KrausChannel projection_channel(double theta, Eigen::Index m, Eigen::Index n, Eigen::Index d);

/// (1/2d) sum_{m,n} |m><m| . |m><m| + |n><n| . |n><n|, the uniform mixture
/// of computational-basis pinchings.
KrausChannel uniform_projection_channel(Eigen::Index d);

// Random fixtures. All draws come from the caller-owned engine or a fixed seed.
using Rng = std::mt19937_64;

Operator haar_unitary(Eigen::Index d, Rng& rng);
std::vector<double> random_probability_vector(std::size_t n, Rng& rng);
Operator random_density_operator(Eigen::Index d, Rng& rng);
StateVector random_state_vector(Eigen::Index d, Rng& rng);

/// sum_i p_i U_i . U_i^† with Haar U_i and a flat-Dirichlet p.
KrausChannel random_bistochastic(Eigen::Index d, int unitary_count, std::uint64_t seed);
KrausChannel random_bistochastic(Eigen::Index d, int unitary_count, Rng& rng);

/// Random mixture of symmetric unitaries U U^T and, for even d, antisymmetric
/// unitaries U J U^T (J = direct sum of [[0,1],[-1,0]] blocks).
KrausChannel random_transposition_invariant(Eigen::Index d, int sym_count, int antisym_count, Rng& rng);

}  // namespace qflip
