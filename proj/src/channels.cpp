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

#include "qflip/channels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qflip {

namespace {

Operator completeness_sum(const std::vector<Operator>& kraus) {
  Operator s = Operator::Zero(kraus.front().cols(), kraus.front().cols());
  for (const auto& k : kraus) s += k.adjoint() * k;
  return s;
}

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError(std::string(what) + ": parameter outside [0,1]");
  }
}

void require_dimension(Eigen::Index d, const char* what) {
  if (d < 2) throw DomainError(std::string(what) + ": dimension must be at least 2");
}

// Makes the first non-negligible component real and positive.
void fix_phase(StateVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > 1e-12) {
      v *= std::conj(v(i)) / a;
      return;
    }
  }
}

}  // namespace

KrausChannel::KrausChannel(std::vector<Operator> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw ValidationError("Kraus list is empty");
  dim_out_ = kraus_.front().rows();
  dim_in_ = kraus_.front().cols();
  if (dim_in_ == 0 || dim_out_ == 0) throw DimensionError("Kraus operator has zero dimension");
  for (const auto& k : kraus_) {
    if (k.rows() != dim_out_ || k.cols() != dim_in_) {
      throw DimensionError("Kraus operators have inconsistent shapes");
    }
  }
  const double dev = trace_preservation_deviation(kraus_);
  if (dev > tol::cptp) {
    std::ostringstream os;
    os << "trace preservation violated: max |sum K^dag K - I| = " << dev;
    throw ValidationError(os.str());
  }
}

Operator KrausChannel::apply(const Operator& x) const {
  if (x.rows() != dim_in_ || x.cols() != dim_in_) {
    throw DimensionError("channel input dimension mismatch");
  }
  Operator out = Operator::Zero(dim_out_, dim_out_);
  for (const auto& k : kraus_) out.noalias() += k * x * k.adjoint();
  return out;
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  Operator out = ch.apply(rho.op());
  out = (out + out.adjoint()) / 2.0;
  return DensityMatrix(std::move(out));
}

double trace_preservation_deviation(const std::vector<Operator>& kraus) {
  if (kraus.empty()) return 1.0;
  const Operator s = completeness_sum(kraus);
  return (s - identity(s.rows())).cwiseAbs().maxCoeff();
}

double unitality_deviation(const std::vector<Operator>& kraus) {
  if (kraus.empty()) return 1.0;
  const auto d = kraus.front().rows();
  Operator s = Operator::Zero(d, d);
  for (const auto& k : kraus) s += k * k.adjoint();
  return (s - identity(d)).cwiseAbs().maxCoeff();
}

bool is_bistochastic(const KrausChannel& ch, double tolerance) {
  return ch.is_square() && trace_preservation_deviation(ch.kraus()) <= tolerance &&
         unitality_deviation(ch.kraus()) <= tolerance;
}

ChoiMatrix::ChoiMatrix(Operator op, Eigen::Index dim_out, Eigen::Index dim_in)
    : op_(std::move(op)), dim_out_(dim_out), dim_in_(dim_in) {
  if (op_.rows() != dim_out * dim_in || op_.cols() != dim_out * dim_in) {
    throw DimensionError("Choi operator dimension does not match dim_out*dim_in");
  }
  if (!is_hermitian(op_)) throw ValidationError("Choi operator is not Hermitian");
  const double min_eig = eigvals_hermitian(op_).front();
  if (min_eig < -tol::psd) {
    std::ostringstream os;
    os << "Choi operator is not positive semidefinite: min eigenvalue " << min_eig;
    throw ValidationError(os.str());
  }
  const Operator marginal = partial_trace(op_, dim_out, dim_in, Subsystem::B);
  const double dev = (marginal - identity(dim_in)).cwiseAbs().maxCoeff();
  if (dev > tol::cptp) {
    std::ostringstream os;
    os << "trace preservation violated: max |tr_out Choi - I| = " << dev;
    throw ValidationError(os.str());
  }
}

StateVector double_ket(const Operator& k) {
  StateVector v(k.size());
  for (Eigen::Index a = 0; a < k.rows(); ++a)
    for (Eigen::Index b = 0; b < k.cols(); ++b) v(a * k.cols() + b) = k(a, b);
  return v;
}

Operator from_double_ket(const StateVector& v, Eigen::Index dim_out, Eigen::Index dim_in) {
  if (v.size() != dim_out * dim_in) throw DimensionError("double ket size mismatch");
  Operator k(dim_out, dim_in);
  for (Eigen::Index a = 0; a < dim_out; ++a)
    for (Eigen::Index b = 0; b < dim_in; ++b) k(a, b) = v(a * dim_in + b);
  return k;
}

Operator choi_sum(const std::vector<Operator>& kraus) {
  if (kraus.empty()) throw ValidationError("Kraus list is empty");
  const auto n = kraus.front().size();
  Operator c = Operator::Zero(n, n);
  for (const auto& k : kraus) {
    const StateVector v = double_ket(k);
    c.noalias() += v * v.adjoint();
  }
  return c;
}

ChoiMatrix choi_of_channel(const KrausChannel& ch) {
  return ChoiMatrix(choi_sum(ch.kraus()), ch.dim_out(), ch.dim_in());
}

KrausChannel channel_of_choi(const ChoiMatrix& c) {
  const auto sys = eigh(c.op());
  std::vector<Operator> kraus;
  // Largest weight first.
  for (auto k = static_cast<Eigen::Index>(sys.values.size()) - 1; k >= 0; --k) {
    const double lambda = sys.values[static_cast<std::size_t>(k)];
    if (lambda < tol::choi_rank) continue;
    StateVector v = sys.vectors.col(k);
    fix_phase(v);
    kraus.push_back(std::sqrt(lambda) * from_double_ket(v, c.dim_out(), c.dim_in()));
  }
  return KrausChannel(std::move(kraus));
}

double choi_distance(const KrausChannel& a, const KrausChannel& b) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) {
    throw DimensionError("choi_distance: channel dimensions differ");
  }
  const Operator diff = choi_sum(a.kraus()) - choi_sum(b.kraus());
  const auto ev = eigvals_hermitian((diff + diff.adjoint()) / 2.0);
  return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

bool channels_equal(const KrausChannel& a, const KrausChannel& b, double tolerance) {
  return choi_distance(a, b) <= tolerance;
}

KrausChannel transpose_channel(const KrausChannel& ch) {
  if (!ch.is_square()) throw DimensionError("transpose_channel: channel is not square");
  std::vector<Operator> out;
  out.reserve(ch.kraus().size());
  for (const auto& k : ch.kraus()) out.push_back(k.transpose());
  return KrausChannel(std::move(out));
}

KrausChannel adjoint_inversion(const KrausChannel& ch) {
  if (!is_bistochastic(ch)) throw ValidationError("adjoint_inversion: channel is not bistochastic");
  std::vector<Operator> out;
  out.reserve(ch.kraus().size());
  for (const auto& k : ch.kraus()) out.push_back(k.adjoint());
  return KrausChannel(std::move(out));
}

Operator swapped_choi(const KrausChannel& ch) {
  if (!ch.is_square()) throw DimensionError("swapped_choi: channel is not square");
  const Operator s = swap_operator(ch.dim_in());
  return s * choi_sum(ch.kraus()) * s;
}

double transposition_asymmetry(const KrausChannel& ch) {
  if (!ch.is_square()) throw DimensionError("transposition_asymmetry: channel is not square");
  const Operator s = swap_operator(ch.dim_in());
  const Operator c = choi_sum(ch.kraus());
  return operator_norm(c * s - s * c);
}

KrausChannel compose(const KrausChannel& second, const KrausChannel& first) {
  if (second.dim_in() != first.dim_out()) throw DimensionError("compose: dimension mismatch");
  std::vector<Operator> out;
  out.reserve(second.kraus().size() * first.kraus().size());
  for (const auto& b : second.kraus())
    for (const auto& a : first.kraus()) out.push_back(b * a);
  return KrausChannel(std::move(out));
}

KrausChannel tensor(const KrausChannel& a, const KrausChannel& b) {
  std::vector<Operator> out;
  out.reserve(a.kraus().size() * b.kraus().size());
  for (const auto& x : a.kraus())
    for (const auto& y : b.kraus()) out.push_back(tensor_product(x, y));
  return KrausChannel(std::move(out));
}

KrausChannel unitary_channel(const Operator& u) { return KrausChannel({u}); }

KrausChannel identity_channel(Eigen::Index d) { return KrausChannel({identity(d)}); }

KrausChannel constant_channel(const DensityMatrix& sigma, Eigen::Index dim_in) {
  const auto sys = eigh(sigma.op());
  std::vector<Operator> out;
  for (std::size_t k = 0; k < sys.values.size(); ++k) {
    if (sys.values[k] < tol::choi_rank) continue;
    const StateVector w = sys.vectors.col(static_cast<Eigen::Index>(k));
    for (Eigen::Index j = 0; j < dim_in; ++j) {
      out.push_back(std::sqrt(sys.values[k]) * w * ket(dim_in, j).adjoint());
    }
  }
  return KrausChannel(std::move(out));
}

KrausChannel partial_trace_channel(Eigen::Index dim_a, Eigen::Index dim_b, Subsystem keep) {
  std::vector<Operator> out;
  if (keep == Subsystem::A) {
    for (Eigen::Index k = 0; k < dim_b; ++k) {
      out.push_back(tensor_product(identity(dim_a), ket(dim_b, k).adjoint()));
    }
  } else {
    for (Eigen::Index k = 0; k < dim_a; ++k) {
      out.push_back(tensor_product(ket(dim_a, k).adjoint(), identity(dim_b)));
    }
  }
  return KrausChannel(std::move(out));
}

KrausChannel append_state_channel(Eigen::Index dim_in, const DensityMatrix& omega) {
  const auto sys = eigh(omega.op());
  std::vector<Operator> out;
  for (std::size_t k = 0; k < sys.values.size(); ++k) {
    if (sys.values[k] < tol::choi_rank) continue;
    const Operator w = sys.vectors.col(static_cast<Eigen::Index>(k));
    out.push_back(std::sqrt(sys.values[k]) * tensor_product(identity(dim_in), w));
  }
  return KrausChannel(std::move(out));
}

KrausChannel depolarising(double q, Eigen::Index d) {
  require_probability(q, "depolarising");
  require_dimension(d, "depolarising");
  const StateVector max_ent = double_ket(identity(d));
  Operator choi = (q / static_cast<double>(d)) * identity(d * d) + (1.0 - q) * max_ent * max_ent.adjoint();
  return channel_of_choi(ChoiMatrix(std::move(choi), d, d));
}

KrausChannel depolarising_pauli(double q) {
  require_probability(q, "depolarising_pauli");
  std::vector<Operator> kraus{std::sqrt(1.0 - 0.75 * q) * identity(2)};
  if (q > 0.0) {
    const double w = std::sqrt(q / 4.0);
    kraus.push_back(w * pauli_x());
    kraus.push_back(w * pauli_y());
    kraus.push_back(w * pauli_z());
  }
  return KrausChannel(std::move(kraus));
}

KrausChannel depolarising_matrix_units(double q, Eigen::Index d) {
  require_probability(q, "depolarising_matrix_units");
  require_dimension(d, "depolarising_matrix_units");
  std::vector<Operator> kraus;
  const double w = std::sqrt(q / static_cast<double>(d));
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) kraus.push_back(w * ket_bra(d, j, i));
  kraus.push_back(std::sqrt(1.0 - q) * identity(d));
  return KrausChannel(std::move(kraus));
}

KrausChannel dephasing_y(double p) {
  require_probability(p, "dephasing_y");
  return KrausChannel({std::sqrt(1.0 - p) * identity(2), std::sqrt(p) * pauli_y()});
}

KrausChannel dephasing_z(double p) {
  require_probability(p, "dephasing_z");
  return KrausChannel({std::sqrt(1.0 - p) * identity(2), std::sqrt(p) * pauli_z()});
}

std::vector<Operator> projection_kraus(double theta, Eigen::Index m, Eigen::Index n, Eigen::Index d) {
  require_dimension(d, "projection_channel");
  if (m == n) throw DomainError("projection_channel: m and n must differ");
  if (m < 0 || n < 0 || m >= d || n >= d) throw DomainError("projection_channel: index out of range");
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  Operator p0 = Operator::Zero(d, d);
  p0(m, m) = 0.5 * (1.0 + s);
  p0(m, n) = 0.5 * c;
  p0(n, m) = 0.5 * c;
  p0(n, n) = 0.5 * (1.0 - s);
  Operator p1 = Operator::Zero(d, d);
  p1(m, m) = 0.5 * (1.0 - s);
  p1(m, n) = -0.5 * c;
  p1(n, m) = -0.5 * c;
  p1(n, n) = 0.5 * (1.0 + s);
  Operator rest = identity(d);
  rest(m, m) = 0.0;
  rest(n, n) = 0.0;
  std::vector<Operator> kraus{p0, p1};
  if (d > 2) kraus.push_back(rest);
  return kraus;
}

KrausChannel projection_channel(double theta, Eigen::Index m, Eigen::Index n, Eigen::Index d) {
  return KrausChannel(projection_kraus(theta, m, n, d));
}

KrausChannel uniform_projection_channel(Eigen::Index d) {
  require_dimension(d, "uniform_projection_channel");
  const double w = 1.0 / std::sqrt(2.0 * static_cast<double>(d));
  std::vector<Operator> kraus;
  for (Eigen::Index m = 0; m < d; ++m) {
    for (Eigen::Index n = 0; n < d; ++n) {
      kraus.push_back(w * ket_bra(d, m, m));
      kraus.push_back(w * ket_bra(d, n, n));
    }
  }
  return KrausChannel(std::move(kraus));
}

Operator haar_unitary(Eigen::Index d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Operator g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<Operator> qr(g);
  Operator q = qr.householderQ();
  const Operator r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double a = std::abs(rjj);
    if (a > 0.0) q.col(j) *= rjj / a;
  }
  return q;
}

std::vector<double> random_probability_vector(std::size_t n, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> p(n);
  double total = 0.0;
  for (auto& x : p) {
    x = expo(rng);
    total += x;
  }
  for (auto& x : p) x /= total;
  return p;
}

Operator random_density_operator(Eigen::Index d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Operator g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  Operator rho = g * g.adjoint();
  rho /= rho.trace();
  return (rho + rho.adjoint()) / 2.0;
}

StateVector random_state_vector(Eigen::Index d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  StateVector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = Complex(normal(rng), normal(rng));
  return v / v.norm();
}

KrausChannel random_bistochastic(Eigen::Index d, int unitary_count, Rng& rng) {
  if (unitary_count < 1) throw DomainError("random_bistochastic: need at least one unitary");
  const auto p = random_probability_vector(static_cast<std::size_t>(unitary_count), rng);
  std::vector<Operator> kraus;
  for (int i = 0; i < unitary_count; ++i) {
    kraus.push_back(std::sqrt(p[static_cast<std::size_t>(i)]) * haar_unitary(d, rng));
  }
  return KrausChannel(std::move(kraus));
}

KrausChannel random_bistochastic(Eigen::Index d, int unitary_count, std::uint64_t seed) {
  Rng rng(seed);
  return random_bistochastic(d, unitary_count, rng);
}

KrausChannel random_transposition_invariant(Eigen::Index d, int sym_count, int antisym_count, Rng& rng) {
  if (d % 2 != 0) antisym_count = 0;
  const int total = sym_count + antisym_count;
  if (total < 1) throw DomainError("random_transposition_invariant: need at least one unitary");
  Operator j = Operator::Zero(d, d);
  for (Eigen::Index k = 0; k + 1 < d; k += 2) {
    j(k, k + 1) = 1.0;
    j(k + 1, k) = -1.0;
  }
  const auto p = random_probability_vector(static_cast<std::size_t>(total), rng);
  std::vector<Operator> kraus;
  for (int i = 0; i < total; ++i) {
    const Operator u = haar_unitary(d, rng);
    const Operator v = i < sym_count ? Operator(u * u.transpose()) : Operator(u * j * u.transpose());
    kraus.push_back(std::sqrt(p[static_cast<std::size_t>(i)]) * v);
  }
  return KrausChannel(std::move(kraus));
}

}  // namespace qflip
