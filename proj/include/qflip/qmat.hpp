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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qflip {

using Complex = std::complex<double>;

/// Dense complex matrix in the fixed computational basis. Row-major indexing
/// (i, j) = <i| A |j>. Transposes and conjugates are always taken in this basis.
using Operator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

// Error hierarchy shared by every module.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionError : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};
struct ValidationError : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

namespace tol {
inline constexpr double herm = 1e-9;
inline constexpr double trace = 1e-9;
inline constexpr double psd = 1e-10;
}  // namespace tol

/// Validated density matrix: Hermitian, unit trace and positive semidefinite
/// within the tolerances in `tol`.
class DensityMatrix {
 public:
  explicit DensityMatrix(Operator op);

  const Operator& op() const noexcept { return op_; }
  Eigen::Index dim() const noexcept { return op_.rows(); }

  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(Eigen::Index d);
  static DensityMatrix basis(Eigen::Index d, Eigen::Index k);

 private:
  Operator op_;
};

// Named operators.
Operator identity(Eigen::Index d);
Operator pauli_x();
Operator pauli_y();
Operator pauli_z();
Operator swap_operator(Eigen::Index d);
Operator ket_bra(Eigen::Index d, Eigen::Index i, Eigen::Index j);
StateVector ket(Eigen::Index d, Eigen::Index k);
StateVector plus_ket();
StateVector minus_ket();

/// Kronecker product; the left factor's index varies slowest.
Operator tensor_product(const Operator& a, const Operator& b);

enum class Subsystem { A, B };

/// Partial trace of an operator on A⊗B. `keep` names the surviving factor.
Operator partial_trace(const Operator& m, Eigen::Index dim_a, Eigen::Index dim_b, Subsystem keep);

Operator transpose(const Operator& m);

bool is_hermitian(const Operator& m, double tolerance = tol::herm);

/// Ascending real spectrum of a Hermitian operator.
std::vector<double> eigvals_hermitian(const Operator& m);

struct Eigensystem {
  std::vector<double> values;  // ascending
  Operator vectors;            // column k belongs to values[k]
};
Eigensystem eigh(const Operator& m);

/// Largest singular value.
double operator_norm(const Operator& m);

double binary_entropy(double p);

/// x log2 x with 0 log 0 = 0.
double xlog2x(double x);

/// Shannon entropy in bits of a probability-like vector after clamping tiny negatives.
double shannon_entropy(const std::vector<double>& probs);

double von_neumann_entropy(const DensityMatrix& rho);

/// Entropy of a Hermitian, trace-one operator whose spectrum is only checked
/// against `tol::psd`. Used on channel outputs that are states by construction.
double von_neumann_entropy(const Operator& rho);

double purity(const DensityMatrix& rho);

/// Uhlmann fidelity F(rho, sigma) = (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace qflip
