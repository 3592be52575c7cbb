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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "qflip/channels.hpp"

using namespace qflip;

namespace {

double max_abs(const Operator& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(qmat, pauli_products) {
  const Complex i(0.0, 1.0);
  EXPECT_LT(max_abs(pauli_x() * pauli_y() - i * pauli_z()), 1e-15);
  EXPECT_LT(max_abs(pauli_y() * pauli_z() - i * pauli_x()), 1e-15);
  EXPECT_LT(max_abs(pauli_z() * pauli_z() - identity(2)), 1e-15);
  EXPECT_LT(max_abs(pauli_y().transpose() + pauli_y()), 1e-15);
}

TEST(qmat, tensor_product_entries) {
  Operator a(2, 2), b(3, 3);
  a << 1.0, 2.0, 3.0, 4.0;
  b.setZero();
  b(0, 2) = Complex(0.0, 1.0);
  const Operator t = tensor_product(a, b);
  ASSERT_EQ(t.rows(), 6);
  // (i1*3 + i2, j1*3 + j2)
  EXPECT_EQ(t(1 * 3 + 0, 0 * 3 + 2), Complex(0.0, 3.0));
  EXPECT_EQ(t(0 * 3 + 0, 1 * 3 + 2), Complex(0.0, 2.0));
  EXPECT_EQ(t(0, 0), Complex(0.0));
}

TEST(qmat, partial_trace_recovers_factors) {
  Rng rng(11);
  for (auto [da, db] : {std::pair<Eigen::Index, Eigen::Index>{2, 3}, {3, 2}, {2, 2}, {4, 3}}) {
    const Operator rho = random_density_operator(da, rng);
    const Operator sigma = random_density_operator(db, rng);
    const Operator joint = tensor_product(rho, sigma);
    EXPECT_LT(max_abs(partial_trace(joint, da, db, Subsystem::A) - rho), 1e-14);
    EXPECT_LT(max_abs(partial_trace(joint, da, db, Subsystem::B) - sigma), 1e-14);
  }
  EXPECT_THROW(partial_trace(identity(6), 4, 2, Subsystem::A), DimensionError);
}

TEST(qmat, partial_trace_of_bell_state_is_mixed) {
  StateVector phi = StateVector::Zero(4);
  phi(0) = phi(3) = M_SQRT1_2;
  const Operator bell = phi * phi.adjoint();
  EXPECT_LT(max_abs(partial_trace(bell, 2, 2, Subsystem::A) - identity(2) / 2.0), 1e-15);
}

TEST(qmat, swap_exchanges_factors) {
  Rng rng(3);
  const StateVector a = random_state_vector(3, rng);
  const StateVector b = random_state_vector(3, rng);
  const Operator s = swap_operator(3);
  const StateVector ab = tensor_product(Operator(a), Operator(b));
  const StateVector ba = tensor_product(Operator(b), Operator(a));
  EXPECT_LT((s * ab - ba).norm(), 1e-14);
  EXPECT_LT(max_abs(s * s - identity(9)), 1e-15);
}

TEST(qmat, eigvals_ascending_and_hermitian_only) {
  Operator m(2, 2);
  m << 2.0, Complex(0.0, 1.0), Complex(0.0, -1.0), 2.0;
  const auto ev = eigvals_hermitian(m);
  ASSERT_EQ(ev.size(), 2u);
  EXPECT_NEAR(ev[0], 1.0, 1e-14);
  EXPECT_NEAR(ev[1], 3.0, 1e-14);
  Operator bad = m;
  bad(0, 1) = 5.0;
  EXPECT_THROW(eigvals_hermitian(bad), ValidationError);
}

TEST(qmat, eigh_reconstructs) {
  Rng rng(5);
  const Operator rho = random_density_operator(4, rng);
  const auto sys = eigh(rho);
  Operator rebuilt = Operator::Zero(4, 4);
  for (std::size_t k = 0; k < sys.values.size(); ++k) {
    const StateVector v = sys.vectors.col(static_cast<Eigen::Index>(k));
    rebuilt += sys.values[k] * v * v.adjoint();
  }
  EXPECT_LT(max_abs(rebuilt - rho), 1e-13);
}

TEST(qmat, density_matrix_validation) {
  EXPECT_NO_THROW(DensityMatrix(identity(2) / 2.0));
  EXPECT_THROW(DensityMatrix(identity(2)), ValidationError);
  Operator negative(2, 2);
  negative << 1.5, 0.0, 0.0, -0.5;
  EXPECT_THROW(DensityMatrix{negative}, ValidationError);
  Operator skew(2, 2);
  skew << 0.5, 0.2, 0.1, 0.5;
  EXPECT_THROW(DensityMatrix{skew}, ValidationError);
  EXPECT_THROW(DensityMatrix(Operator::Identity(2, 3)), DimensionError);
}

TEST(qmat, entropies) {
  EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
  EXPECT_DOUBLE_EQ(binary_entropy(0.0), 0.0);
  EXPECT_DOUBLE_EQ(binary_entropy(1.0), 0.0);
  EXPECT_THROW(binary_entropy(1.5), DomainError);
  EXPECT_NEAR(binary_entropy(0.11), -(0.11 * std::log2(0.11) + 0.89 * std::log2(0.89)), 1e-15);
  EXPECT_DOUBLE_EQ(xlog2x(0.0), 0.0);

  for (Eigen::Index d : {2, 3, 5}) {
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed(d)), std::log2(static_cast<double>(d)), 1e-13);
  }
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::pure(plus_ket())), 0.0, 1e-13);

  // A unitarily rotated diagonal state has the Shannon entropy of its diagonal.
  Rng rng(9);
  const std::vector<double> p{0.5, 0.3, 0.15, 0.05};
  Operator diag = Operator::Zero(4, 4);
  for (int k = 0; k < 4; ++k) diag(k, k) = p[static_cast<std::size_t>(k)];
  const Operator u = haar_unitary(4, rng);
  double oracle = 0.0;
  for (double x : p) oracle -= x * std::log2(x);
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix(u * diag * u.adjoint())), oracle, 1e-12);
  EXPECT_NEAR(shannon_entropy(p), oracle, 1e-15);
}

TEST(qmat, fidelity_and_purity) {
  Rng rng(21);
  const StateVector a = random_state_vector(3, rng);
  const StateVector b = random_state_vector(3, rng);
  const double overlap = std::norm(a.dot(b));
  EXPECT_NEAR(fidelity(DensityMatrix::pure(a), DensityMatrix::pure(b)), overlap, 1e-10);
  const DensityMatrix rho(random_density_operator(3, rng));
  EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-12);
  EXPECT_NEAR(purity(DensityMatrix::maximally_mixed(4)), 0.25, 1e-15);
  EXPECT_NEAR(purity(DensityMatrix::pure(a)), 1.0, 1e-14);
}

TEST(qmat, operator_norm_is_largest_singular_value) {
  Operator m = Operator::Zero(2, 2);
  m(0, 1) = 3.0;
  m(1, 0) = Complex(0.0, -2.0);
  EXPECT_NEAR(operator_norm(m), 3.0, 1e-14);
  EXPECT_TRUE(is_hermitian(pauli_y()));
  EXPECT_FALSE(is_hermitian(m));
  EXPECT_LT(max_abs(transpose(pauli_y()) + pauli_y()), 1e-15);
}
