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

#include "qflip/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

namespace qflip {

namespace {

std::string describe(const char* what, double value) {
  std::ostringstream os;
  os << what << " (deviation " << value << ")";
  return os.str();
}

}  // namespace

DensityMatrix::DensityMatrix(Operator op) : op_(std::move(op)) {
  if (op_.rows() == 0 || op_.rows() != op_.cols()) {
    throw DimensionError("density matrix must be square and nonempty");
  }
  const double herm_dev = (op_ - op_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > tol::herm) {
    throw ValidationError(describe("density matrix is not Hermitian", herm_dev));
  }
  const double trace_dev = std::abs(op_.trace() - Complex(1.0, 0.0));
  if (trace_dev > tol::trace) {
    throw ValidationError(describe("density matrix trace differs from 1", trace_dev));
  }
  const double min_eig = eigvals_hermitian(op_).front();
  if (min_eig < -tol::psd) {
    throw ValidationError(describe("density matrix has a negative eigenvalue", -min_eig));
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  const double n = psi.norm();
  if (n == 0.0) throw ValidationError("zero state vector");
  const StateVector u = psi / n;
  return DensityMatrix(u * u.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index d) {
  return DensityMatrix(identity(d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::basis(Eigen::Index d, Eigen::Index k) { return pure(ket(d, k)); }

Operator identity(Eigen::Index d) { return Operator::Identity(d, d); }

Operator pauli_x() {
  Operator m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Operator pauli_y() {
  Operator m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

Operator pauli_z() {
  Operator m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Operator swap_operator(Eigen::Index d) {
  Operator s = Operator::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      s(j * d + i, i * d + j) = 1.0;
    }
  }
  return s;
}

Operator ket_bra(Eigen::Index d, Eigen::Index i, Eigen::Index j) {
  Operator m = Operator::Zero(d, d);
  m(i, j) = 1.0;
  return m;
}

StateVector ket(Eigen::Index d, Eigen::Index k) {
  if (k < 0 || k >= d) throw DimensionError("basis index out of range");
  StateVector v = StateVector::Zero(d);
  v(k) = 1.0;
  return v;
}

StateVector plus_ket() {
  StateVector v(2);
  v << M_SQRT1_2, M_SQRT1_2;
  return v;
}

StateVector minus_ket() {
  StateVector v(2);
  v << M_SQRT1_2, -M_SQRT1_2;
  return v;
}

Operator tensor_product(const Operator& a, const Operator& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

Operator partial_trace(const Operator& m, Eigen::Index dim_a, Eigen::Index dim_b, Subsystem keep) {
  if (dim_a <= 0 || dim_b <= 0 || m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b) {
    throw DimensionError("partial_trace: operator dimension does not match dA*dB");
  }
  if (keep == Subsystem::A) {
    Operator out = Operator::Zero(dim_a, dim_a);
    for (Eigen::Index i = 0; i < dim_a; ++i)
      for (Eigen::Index j = 0; j < dim_a; ++j)
        for (Eigen::Index k = 0; k < dim_b; ++k) out(i, j) += m(i * dim_b + k, j * dim_b + k);
    return out;
  }
  Operator out = Operator::Zero(dim_b, dim_b);
  for (Eigen::Index i = 0; i < dim_b; ++i)
    for (Eigen::Index j = 0; j < dim_b; ++j)
      for (Eigen::Index k = 0; k < dim_a; ++k) out(i, j) += m(k * dim_b + i, k * dim_b + j);
  return out;
}

Operator transpose(const Operator& m) { return m.transpose(); }

bool is_hermitian(const Operator& m, double tolerance) {
  return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

std::vector<double> eigvals_hermitian(const Operator& m) {
  if (!is_hermitian(m)) throw ValidationError("eigvals_hermitian: operator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Operator> solver(m, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

Eigensystem eigh(const Operator& m) {
  if (!is_hermitian(m)) throw ValidationError("eigh: operator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Operator> solver(m);
  const auto& ev = solver.eigenvalues();
  return {{ev.data(), ev.data() + ev.size()}, solver.eigenvectors()};
}

double operator_norm(const Operator& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Operator> svd(m);
  return svd.singularValues()(0);
}

double xlog2x(double x) { return x <= 0.0 ? 0.0 : x * std::log2(x); }

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binary_entropy: p outside [0,1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -xlog2x(p) - xlog2x(1.0 - p);
}

double shannon_entropy(const std::vector<double>& probs) {
  double h = 0.0;
  for (double p : probs) h -= xlog2x(std::clamp(p, 0.0, 1.0));
  return h;
}

double von_neumann_entropy(const Operator& rho) {
  const auto ev = eigvals_hermitian(rho);
  if (ev.front() < -tol::psd) {
    throw ValidationError(describe("entropy of a non-positive operator", -ev.front()));
  }
  return shannon_entropy(ev);
}

double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.op()); }

double purity(const DensityMatrix& rho) { return (rho.op() * rho.op()).trace().real(); }

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionError("fidelity: dimension mismatch");
  const auto sys = eigh(rho.op());
  Eigen::VectorXd sq(sys.values.size());
  // Eigenvalues at roundoff level are zeroed before the square root; otherwise
  // sqrt(1e-17) ~ 3e-9 would leak into the fidelity of pure states.
  const double cutoff = 1e-14 * std::max(1.0, sys.values.back());
  for (std::size_t k = 0; k < sys.values.size(); ++k)
    sq(k) = sys.values[k] > cutoff ? std::sqrt(sys.values[k]) : 0.0;
  const Operator root = sys.vectors * sq.cast<Complex>().asDiagonal() * sys.vectors.adjoint();
  Operator inner = root * sigma.op() * root;
  inner = (inner + inner.adjoint()) / 2.0;
  double tr = 0.0;
  for (double v : eigvals_hermitian(inner)) tr += v > cutoff ? std::sqrt(v) : 0.0;
  return tr * tr;
}

}  // namespace qflip
