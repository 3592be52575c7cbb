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
#include <cstdio>
#include <exception>
#include <functional>
#include <memory>
#include <ostream>
#include <thread>

#include <unsupported/Eigen/KroneckerProduct>

namespace qflip {

namespace {

void require_probability(double q, const char* what) {
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError(std::string(what) + ": parameter outside [0,1]");
}

void require_dimension(Eigen::Index d, const char* what) {
  if (d < 2) throw DomainError(std::string(what) + ": dimension must be at least 2");
}

double log2d(Eigen::Index d) { return std::log2(static_cast<double>(d)); }

}  // namespace

Ensemble::Ensemble(std::vector<Member> members) : members_(std::move(members)) {
  if (members_.empty()) throw ValidationError("ensemble is empty");
  double total = 0.0;
  for (const auto& m : members_) {
    if (!(m.probability >= 0.0)) throw ValidationError("ensemble probability is negative");
    if (m.state.dim() != dim()) throw DimensionError("ensemble states differ in dimension");
    total += m.probability;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ValidationError("ensemble probabilities do not sum to 1");
}

Ensemble Ensemble::computational_basis(Eigen::Index d) {
  std::vector<Member> members;
  for (Eigen::Index k = 0; k < d; ++k) {
    members.push_back({1.0 / static_cast<double>(d), DensityMatrix::basis(d, k)});
  }
  return Ensemble(std::move(members));
}

Operator Ensemble::average() const {
  Operator avg = Operator::Zero(dim(), dim());
  for (const auto& m : members_) avg += m.probability * m.state.op();
  return avg;
}

double holevo_of_ensemble(const KrausChannel& ch, const Ensemble& ens) {
  if (ch.dim_in() != ens.dim()) throw DimensionError("holevo_of_ensemble: dimension mismatch");
  auto hermitian = [](Operator m) { return Operator((m + m.adjoint()) / 2.0); };
  double conditional = 0.0;
  for (const auto& m : ens.members()) {
    if (m.probability == 0.0) continue;
    conditional += m.probability * von_neumann_entropy(hermitian(ch.apply(m.state.op())));
  }
  return von_neumann_entropy(hermitian(ch.apply(ens.average()))) - conditional;
}

double holevo_labeled_random(const LabeledRandomChannel& lrc, const Ensemble& ens,
                             const LabeledHolevoOptions& opts) {
  double total = 0.0;
  for (const auto& b : lrc.branches()) {
    const double chi = holevo_of_ensemble(b.channel, ens);
    if (opts.validate) {
      const double best = holevo_maximize(b.channel, opts.search).value;
      if (best - chi > opts.tolerance) {
        throw ValidationError("ensemble does not achieve the Holevo information of branch \"" + b.label + "\"");
      }
    }
    total += b.probability * chi;
  }
  return total;
}

double coherent_information(const KrausChannel& ch, const DensityMatrix& rho) {
  if (ch.dim_in() != rho.dim()) throw DimensionError("coherent_information: dimension mismatch");
  const auto sys = eigh(rho.op());
  std::vector<std::pair<double, StateVector>> support;
  for (std::size_t k = 0; k < sys.values.size(); ++k) {
    if (sys.values[k] > 1e-12) support.emplace_back(sys.values[k], sys.vectors.col(static_cast<Eigen::Index>(k)));
  }
  const auto r = static_cast<Eigen::Index>(support.size());
  StateVector psi = StateVector::Zero(rho.dim() * r);
  for (Eigen::Index k = 0; k < r; ++k) {
    const auto& [lambda, e] = support[static_cast<std::size_t>(k)];
    psi += std::sqrt(lambda) * Eigen::kroneckerProduct(e, ket(r, k)).eval();
  }
  const Operator pure = psi * psi.adjoint();
  const auto dout = ch.dim_out();
  Operator joint = Operator::Zero(dout * r, dout * r);
  for (const auto& k : ch.kraus()) {
    const Operator lifted = tensor_product(k, identity(r));
    joint.noalias() += lifted * pure * lifted.adjoint();
  }
  joint = (joint + joint.adjoint()) / 2.0;
  const Operator marginal = partial_trace(joint, dout, r, Subsystem::A);
  return von_neumann_entropy(marginal) - von_neumann_entropy(joint);
}

double flip_capacity_gain(double q) {
  require_probability(q, "flip_capacity_gain");
  return -xlog2x(q) / 4.0 - xlog2x(1.0 - q / 4.0);
}

double classical_capacity_depolarising(double q) {
  require_probability(q, "classical_capacity_depolarising");
  return 1.0 + xlog2x(1.0 - q / 2.0) + xlog2x(q / 2.0);
}

double classical_capacity_flipped_depolarising(double q) {
  require_probability(q, "classical_capacity_flipped_depolarising");
  return classical_capacity_depolarising(q) + flip_capacity_gain(q);
}

double holevo_flipped_depolarising_general(double q, Eigen::Index d) {
  require_probability(q, "holevo_flipped_depolarising_general");
  require_dimension(d, "holevo_flipped_depolarising_general");
  const double dd = static_cast<double>(d);
  const double w_plus = 1.0 - q / 2.0 + q / (2.0 * dd);
  const double w_minus = q / 2.0 - q / (2.0 * dd);
  return log2d(d) - xlog2x(w_plus) + xlog2x(1.0 - q + q / dd) + (dd - 1.0) * xlog2x(q / (2.0 * dd)) -
         w_minus * std::log2(dd - 1.0);
}

double flipped_depolarising_output_entropy(double q, Eigen::Index d) {
  require_probability(q, "flipped_depolarising_output_entropy");
  require_dimension(d, "flipped_depolarising_output_entropy");
  const double dd = static_cast<double>(d);
  const double a = 1.0 / dd - q / (2.0 * dd) + q / (2.0 * dd * dd);
  const double b = q / (2.0 * dd) - q / (2.0 * dd * dd);
  return -dd * xlog2x(a) - dd * xlog2x(b);
}

double flipped_depolarising_joint_entropy(double q, Eigen::Index d) {
  require_probability(q, "flipped_depolarising_joint_entropy");
  require_dimension(d, "flipped_depolarising_joint_entropy");
  const double d2 = static_cast<double>(d * d);
  return -(d2 - 1.0) * xlog2x(q / d2) - xlog2x(1.0 - q + q / d2);
}

double coherent_info_flipped_depolarising(double q, Eigen::Index d) {
  return flipped_depolarising_output_entropy(q, d) - flipped_depolarising_joint_entropy(q, d);
}

double quantum_capacity_dephasing(double p) {
  require_probability(p, "quantum_capacity_dephasing");
  return 1.0 - binary_entropy(p);
}

double smith_smolin_upper_bound(double q, int grid_size) {
  require_probability(q, "smith_smolin_upper_bound");
  return SmithSmolinEnvelope(grid_size).bound(q);
}

// ---------------------------------------------------------------------------
// Sweeps and CSV.

std::vector<std::string> family_quantities(ChannelFamily family) {
  switch (family) {
    case ChannelFamily::depolarising:
      return {"C", "C_flipped", "Q_smith_smolin", "Ic_flipped", "chi_flipped"};
    case ChannelFamily::dephasing_y:
      return {"Q", "Q_flipped"};
  }
  return {};
}

ChannelFamily parse_family(const std::string& name) {
  if (name == "depolarising") return ChannelFamily::depolarising;
  if (name == "dephasing_y" || name == "dephasing") return ChannelFamily::dephasing_y;
  throw DomainError("unknown channel family: " + name);
}

std::string to_string(ChannelFamily family) {
  return family == ChannelFamily::depolarising ? "depolarising" : "dephasing_y";
}

CapacityCurve curve_sweep(ChannelFamily family, const std::string& quantity, const std::vector<double>& grid,
                          Eigen::Index d, int envelope_grid_size) {
  if (grid.empty()) throw DomainError("curve_sweep: empty grid");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw DomainError("curve_sweep: grid is not strictly increasing");
  }
  CapacityCurve curve;
  curve.family = to_string(family);
  curve.quantity = quantity;
  curve.d = 2;

  std::function<double(double)> eval;
  if (family == ChannelFamily::depolarising) {
    curve.parameter_name = "q";
    if (quantity == "C") {
      curve.formula = "holevo_capacity_depolarising";
      eval = classical_capacity_depolarising;
    } else if (quantity == "C_flipped") {
      curve.formula = "capacity_flipped_depolarising";
      eval = classical_capacity_flipped_depolarising;
    } else if (quantity == "Q_smith_smolin") {
      curve.formula = "smith_smolin_envelope_upper_bound";
      auto env = std::make_shared<const SmithSmolinEnvelope>(envelope_grid_size);
      eval = [env](double q) {
        if (!(q >= 0.0 && q <= 1.0)) throw DomainError("smith_smolin_upper_bound: parameter outside [0,1]");
        return env->bound(q);
      };
    } else if (quantity == "Ic_flipped") {
      curve.d = d;
      curve.formula = "coherent_info_flipped_depolarising_maxmixed";
      eval = [d](double q) { return coherent_info_flipped_depolarising(q, d); };
    } else if (quantity == "chi_flipped") {
      curve.d = d;
      curve.formula = d == 2 ? "capacity_flipped_depolarising_general" : "holevo_flipped_depolarising_general";
      eval = [d](double q) { return holevo_flipped_depolarising_general(q, d); };
    }
  } else {
    curve.parameter_name = "p";
    if (quantity == "Q") {
      curve.formula = "dephasing_quantum_capacity";
      eval = quantum_capacity_dephasing;
    } else if (quantity == "Q_flipped") {
      curve.formula = "flipped_dephasing_quantum_capacity";
      eval = [](double p) {
        if (!(p >= 0.0 && p <= 1.0)) throw DomainError("Q_flipped: parameter outside [0,1]");
        return 1.0;
      };
    }
  }
  if (!eval) throw DomainError("unknown quantity \"" + quantity + "\" for family " + curve.family);

  std::vector<double> values(grid.size());
  const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8);
  if (workers == 1 || grid.size() < 64) {
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] = eval(grid[i]);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < grid.size(); i += workers) values[i] = eval(grid[i]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(values[i])) throw DomainError("curve_sweep: non-finite value");
    curve.points.emplace_back(grid[i], values[i]);
  }
  return curve;
}

std::string format_value(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

void write_csv(std::ostream& os, const std::vector<CapacityCurve>& curves) {
  os << "parameter,quantity,value,family,d,formula\n";
  struct Row {
    double parameter;
    std::size_t curve;
    double value;
  };
  std::vector<Row> rows;
  for (std::size_t c = 0; c < curves.size(); ++c)
    for (const auto& [x, y] : curves[c].points) rows.push_back({x, c, y});
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return a.parameter < b.parameter || (a.parameter == b.parameter && a.curve < b.curve);
  });
  for (const auto& r : rows) {
    const auto& c = curves[r.curve];
    os << format_value(r.parameter) << ',' << c.quantity << ',' << format_value(r.value) << ',' << c.family << ','
       << c.d << ',' << c.formula << '\n';
  }
}

}  // namespace qflip
