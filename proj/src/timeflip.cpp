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

#include "qflip/timeflip.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace qflip {

namespace {

void fix_phase(StateVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > 1e-12) {
      v *= std::conj(v(i)) / a;
      return;
    }
  }
}

// Orthonormal basis (columns) of the +1 or -1 eigenspace of SWAP on C^d ⊗ C^d.
Operator swap_sector_basis(Eigen::Index d, bool symmetric) {
  const Eigen::Index cols = symmetric ? d * (d + 1) / 2 : d * (d - 1) / 2;
  Operator q = Operator::Zero(d * d, cols);
  Eigen::Index c = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (symmetric) q(i * d + i, c++) = 1.0;
    for (Eigen::Index j = i + 1; j < d; ++j) {
      q(i * d + j, c) = M_SQRT1_2;
      q(j * d + i, c) = symmetric ? M_SQRT1_2 : -M_SQRT1_2;
      ++c;
    }
  }
  return q;
}

std::vector<Operator> sector_kraus(const Operator& choi, Eigen::Index d, bool symmetric) {
  const Operator q = swap_sector_basis(d, symmetric);
  std::vector<Operator> out;
  if (q.cols() == 0) return out;
  Operator block = q.adjoint() * choi * q;
  block = (block + block.adjoint()) / 2.0;
  const auto sys = eigh(block);
  for (auto k = static_cast<Eigen::Index>(sys.values.size()) - 1; k >= 0; --k) {
    const double lambda = sys.values[static_cast<std::size_t>(k)];
    if (lambda < tol::choi_rank) continue;
    StateVector v = q * sys.vectors.col(k);
    fix_phase(v);
    out.push_back(std::sqrt(lambda) * from_double_ket(v, d, d));
  }
  return out;
}

void require_transposition_invariant(const KrausChannel& ch, const char* what) {
  if (!ch.is_square()) throw DimensionError(std::string(what) + ": channel is not square");
  const double asym = transposition_asymmetry(ch);
  if (asym > tol::transposition_invariance) {
    std::ostringstream os;
    os << what << ": channel is not transposition invariant (||[Choi, SWAP]|| = " << asym << ")";
    throw ValidationError(os.str());
  }
}

Operator weight_sum(const std::vector<Operator>& kraus, Eigen::Index d) {
  Operator s = Operator::Zero(d, d);
  for (const auto& k : kraus) s += k.adjoint() * k;
  return s;
}

// Kraus operators sqrt(mu) |w><v| preparing `state` after projecting onto |v>.
void add_reprepare(std::vector<Operator>& kraus, const StateVector& v, const DensityMatrix& state) {
  const auto sys = eigh(state.op());
  for (std::size_t k = 0; k < sys.values.size(); ++k) {
    if (sys.values[k] < tol::choi_rank) continue;
    kraus.push_back(std::sqrt(sys.values[k]) * sys.vectors.col(static_cast<Eigen::Index>(k)) * v.adjoint());
  }
}

}  // namespace

KrausChannel time_flip_kraus(const KrausChannel& ch) {
  if (!is_bistochastic(ch)) {
    throw ValidationError("time flip requires a bistochastic channel");
  }
  const Operator p0 = ket_bra(2, 0, 0);
  const Operator p1 = ket_bra(2, 1, 1);
  std::vector<Operator> out;
  out.reserve(ch.kraus().size());
  for (const auto& c : ch.kraus()) {
    out.push_back(tensor_product(c, p0) + tensor_product(c.transpose(), p1));
  }
  return KrausChannel(std::move(out));
}

KrausChannel flipped_channel(const KrausChannel& ch, const DensityMatrix& omega) {
  if (omega.dim() != 2) throw DimensionError("control state must be a qubit");
  return compose(time_flip_kraus(ch), append_state_channel(ch.dim_in(), omega));
}

FlippedChannel make_flipped(const KrausChannel& ch, const DensityMatrix& omega) {
  if (omega.dim() != 2) throw DimensionError("control state must be a qubit");
  return {ch, omega, time_flip_kraus(ch)};
}

KrausChannel FlippedChannel::prepared() const {
  return compose(joint, append_state_channel(base.dim_in(), control_state));
}

std::vector<Operator> fourier_povm() {
  const StateVector plus = plus_ket();
  const StateVector minus = minus_ket();
  return {plus * plus.adjoint(), minus * minus.adjoint()};
}

KrausChannel effective_channel(const KrausChannel& ch, const DensityMatrix& omega,
                               const std::vector<Operator>& povm) {
  if (povm.empty()) throw ValidationError("invalid POVM: no elements");
  Operator total = Operator::Zero(2, 2);
  for (const auto& e : povm) {
    if (e.rows() != 2 || e.cols() != 2) throw ValidationError("invalid POVM: elements must be 2x2");
    if (!is_hermitian(e)) throw ValidationError("invalid POVM: element is not Hermitian");
    if (eigvals_hermitian(e).front() < -tol::psd) {
      throw ValidationError("invalid POVM: element is not positive semidefinite");
    }
    total += e;
  }
  if ((total - identity(2)).cwiseAbs().maxCoeff() > tol::cptp) {
    throw ValidationError("invalid POVM: elements do not sum to the identity");
  }

  const KrausChannel flipped = flipped_channel(ch, omega);
  const auto d = ch.dim_out();
  const auto n = static_cast<Eigen::Index>(povm.size());
  std::vector<Operator> kraus;
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto sys = eigh(povm[static_cast<std::size_t>(j)]);
    for (std::size_t l = 0; l < sys.values.size(); ++l) {
      if (sys.values[l] < tol::choi_rank) continue;
      const StateVector e = sys.vectors.col(static_cast<Eigen::Index>(l));
      const Operator record = std::sqrt(sys.values[l]) * ket(n, j) * e.adjoint();
      const Operator lift = tensor_product(identity(d), record);
      for (const auto& g : flipped.kraus()) kraus.push_back(lift * g);
    }
  }
  return KrausChannel(std::move(kraus));
}

SymAntisymDecomposition sym_antisym_decomposition(const KrausChannel& ch) {
  require_transposition_invariant(ch, "sym_antisym_decomposition");
  const Operator choi = choi_sum(ch.kraus());
  const auto d = ch.dim_in();
  return {sector_kraus(choi, d, true), sector_kraus(choi, d, false)};
}

LabeledRandomChannel canonical_effective(const KrausChannel& ch) {
  require_transposition_invariant(ch, "canonical_effective");
  const auto parts = sym_antisym_decomposition(ch);
  const auto d = ch.dim_in();

  std::vector<LabeledBranch> branches;
  double assigned = 0.0;
  const std::pair<const std::vector<Operator>*, const char*> sectors[] = {{&parts.sym, "+"},
                                                                          {&parts.antisym, "-"}};
  for (const auto& [kraus, label] : sectors) {
    if (kraus->empty()) continue;
    const Operator s = weight_sum(*kraus, d);
    const double w = s.trace().real() / static_cast<double>(d);
    if ((s - w * identity(d)).cwiseAbs().maxCoeff() > tol::cptp) {
      throw ValidationError(
          "canonical_effective: branch probability depends on the input (not a labeled random channel)");
    }
    if (w < 1e-12) continue;
    std::vector<Operator> normalised;
    for (const auto& k : *kraus) normalised.push_back(k / std::sqrt(w));
    branches.push_back({w, KrausChannel(std::move(normalised)), label});
    assigned += w;
  }
  // Absorb roundoff so the weights sum to one exactly.
  for (auto& b : branches) b.probability /= assigned;
  return LabeledRandomChannel(std::move(branches));
}

KrausChannel reprepared_flip(const KrausChannel& ch, const DensityMatrix& omega) {
  if (omega.dim() != 2) throw DimensionError("control state must be a qubit");
  const KrausChannel flipped = flipped_channel(ch, DensityMatrix::pure(plus_ket()));
  const Operator z = pauli_z();
  std::vector<Operator> control;
  add_reprepare(control, plus_ket(), omega);
  add_reprepare(control, minus_ket(), DensityMatrix(z * omega.op() * z));
  return compose(tensor(identity_channel(ch.dim_in()), KrausChannel(std::move(control))), flipped);
}

const char* to_string(Outcome o) { return o == Outcome::plus ? "+" : "-"; }

double choi_second_eigenvalue(const KrausChannel& ch) {
  const auto ev = eigvals_hermitian(choi_sum(ch.kraus()));
  return ev.size() < 2 ? 0.0 : std::max(ev[ev.size() - 2], 0.0);
}

std::vector<HeraldedOutcome> heralded_transmit(const KrausChannel& ch, const DensityMatrix& rho) {
  const LabeledRandomChannel lrc = canonical_effective(ch);
  std::vector<HeraldedOutcome> out;
  for (const auto& b : lrc.branches()) {
    out.push_back({b.label == "+" ? Outcome::plus : Outcome::minus, b.probability, apply(b.channel, rho),
                   choi_second_eigenvalue(b.channel) < tol::noiseless});
  }
  return out;
}

DensityMatrix dephasing_decode(const HeraldedOutcome& outcome) {
  if (outcome.conditional_state.dim() != 2) throw DimensionError("dephasing_decode: qubit outcome expected");
  if (outcome.outcome == Outcome::plus) return outcome.conditional_state;
  const Operator y = pauli_y();
  return DensityMatrix(y * outcome.conditional_state.op() * y);
}

std::vector<std::size_t> sample_outcomes(const std::vector<HeraldedOutcome>& outcomes, std::size_t shots,
                                         Rng& rng) {
  std::vector<std::size_t> counts(outcomes.size(), 0);
  if (outcomes.empty()) return counts;
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (std::size_t s = 0; s < shots; ++s) {
    const double u = uniform(rng);
    double acc = 0.0;
    std::size_t pick = outcomes.size() - 1;
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
      acc += outcomes[k].probability;
      if (u < acc) {
        pick = k;
        break;
      }
    }
    ++counts[pick];
  }
  return counts;
}

}  // namespace qflip
