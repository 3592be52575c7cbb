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
#include <string>
#include <utility>
#include <vector>

#include "qflip/channels.hpp"
#include "qflip/labeled_channel.hpp"

namespace qflip {

/// Probability-weighted list of input states.
class Ensemble {
 public:
  struct Member {
    double probability;
    DensityMatrix state;
  };

  /// Probabilities nonnegative and summing to 1 within 1e-12; equal dimensions.
  explicit Ensemble(std::vector<Member> members);

  /// Uniform mixture of the computational basis states of C^d.
  static Ensemble computational_basis(Eigen::Index d);

  const std::vector<Member>& members() const noexcept { return members_; }
  Eigen::Index dim() const { return members_.front().state.dim(); }
  Operator average() const;

 private:
  std::vector<Member> members_;
};

/// H(N(avg)) - sum_x p_x H(N(rho_x)) in bits, at a fixed ensemble.
double holevo_of_ensemble(const KrausChannel& ch, const Ensemble& ens);

struct HolevoSearchOptions {
  int restarts = 100;
  int iterations = 3000;          // per local search
  std::uint64_t seed = 0xF11F;
};

struct HolevoSearchResult {
  double value;
  Ensemble ensemble;
};

/// Brute-force maximisation of the Holevo quantity over ensembles of d^2 pure
/// states. Multistart Nelder-Mead over hyperspherical angles (states and the
/// square roots of the probabilities); the first start is the uniform
/// computational-basis ensemble. Only d = 2 and d = 3 are supported.
HolevoSearchResult holevo_maximize(const KrausChannel& ch, const HolevoSearchOptions& opts = {});

struct LabeledHolevoOptions {
  bool validate = false;  // check the ensemble against per-branch holevo_maximize
  double tolerance = 1e-4;
  HolevoSearchOptions search{};
};

/// sum_l p_l chi(C_l, ens). Equals the Holevo information of the labeled
/// channel when `ens` achieves every branch's optimum simultaneously.
double holevo_labeled_random(const LabeledRandomChannel& lrc, const Ensemble& ens,
                             const LabeledHolevoOptions& opts = {});

/// Coherent information H(N(rho)) - H((N ⊗ I)(Psi_rho)) in qubits. The
/// purification uses a reference of dimension rank(rho).
double coherent_information(const KrausChannel& ch, const DensityMatrix& rho);

// Closed forms. Logarithms base 2, 0 log 0 = 0.

/// 1 + (1-q/2) log(1-q/2) + (q/2) log(q/2).
double classical_capacity_depolarising(double q);

/// classical_capacity_depolarising(q) - (q/4) log q - (1-q/4) log(1-q/4).
double classical_capacity_flipped_depolarising(double q);

/// -(q/4) log q - (1-q/4) log(1-q/4): the gain from the flip.
double flip_capacity_gain(double q);

/// Holevo information of the |+>-flipped depolarising channel in dimension d,
/// achieved by the uniform computational-basis ensemble. A capacity only for d = 2.
double holevo_flipped_depolarising_general(double q, Eigen::Index d);

/// Entropy of the |+>-flipped depolarising output on I/d.
double flipped_depolarising_output_entropy(double q, Eigen::Index d);

/// Entropy of (F ⊗ I)(Phi) for the |+>-flipped depolarising channel.
double flipped_depolarising_joint_entropy(double q, Eigen::Index d);

/// Coherent information of the |+>-flipped depolarising channel at I/d.
double coherent_info_flipped_depolarising(double q, Eigen::Index d);

/// 1 - H(p), the quantum capacity of the Y-dephasing channel.
double quantum_capacity_dephasing(double p);

/// Literature reference values (not computed here), bits per use.
inline constexpr double kSuperposedOrdersCapacity = 0.049;
inline constexpr double kSuperposedPathsCapacity = 0.16;

/// Lower convex envelope of min{1 - H(p), H((1-g)/2) - H(g/2), 1 - 4p}
/// with g(p) = 4 sqrt(1-p)(1 - sqrt(1-p)), sampled on a uniform grid over
/// p in [0, 1] and built with a monotone-chain lower hull.
class SmithSmolinEnvelope {
 public:
  static constexpr int kDefaultGridSize = 8192;

  explicit SmithSmolinEnvelope(int grid_size = kDefaultGridSize);

  static double amplitude_damping_term(double p);
  static double dephasing_term(double p);
  static double linear_term(double p);
  static double pointwise_min(double p);

  /// Hull value at p in [0, 1] (may be negative).
  double envelope(double p) const;

  /// Upper bound on Q(N_q): envelope at p = 3q/4, clamped at 0.
  double bound(double q) const;

  const std::vector<std::pair<double, double>>& hull() const noexcept { return hull_; }
  int grid_size() const noexcept { return grid_size_; }

 private:
  int grid_size_;
  std::vector<std::pair<double, double>> hull_;
};

double smith_smolin_upper_bound(double q, int grid_size = SmithSmolinEnvelope::kDefaultGridSize);

/// Sampled closed form or bound, with provenance for CSV output.
struct CapacityCurve {
  std::string parameter_name;
  std::string family;
  std::string quantity;
  std::string formula;
  Eigen::Index d = 2;
  std::vector<std::pair<double, double>> points;  // (parameter, value)
};

enum class ChannelFamily { depolarising, dephasing_y };

/// Quantities by family:
///   depolarising: C, C_flipped, Q_smith_smolin, Ic_flipped, chi_flipped
///   dephasing_y:  Q, Q_flipped
/// Throws DomainError for unknown pairs or an empty/non-increasing grid.
CapacityCurve curve_sweep(ChannelFamily family, const std::string& quantity, const std::vector<double>& grid,
                          Eigen::Index d = 2, int envelope_grid_size = SmithSmolinEnvelope::kDefaultGridSize);

std::vector<std::string> family_quantities(ChannelFamily family);
ChannelFamily parse_family(const std::string& name);
std::string to_string(ChannelFamily family);

/// "%.12g".
std::string format_value(double x);

/// Header `parameter,quantity,value,family,d,formula`; rows ordered by
/// parameter, then by the order of `curves`.
void write_csv(std::ostream& os, const std::vector<CapacityCurve>& curves);

}  // namespace qflip
