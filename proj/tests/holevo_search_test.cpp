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

#include <cmath>

#include <gtest/gtest.h>

#include "qflip/capacity.hpp"

using namespace qflip;

namespace {

double h2(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

// (1-p) rho + p X rho X: basis states are dephased, |±> are untouched.
KrausChannel dephasing_x(double p) {
  return KrausChannel({std::sqrt(1.0 - p) * identity(2), std::sqrt(p) * pauli_x()});
}

// Qutrit dephasing in the Fourier basis.
KrausChannel fourier_dephasing_qutrit(double p) {
  Operator f(3, 3);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) f(j, k) = std::polar(1.0 / std::sqrt(3.0), 2.0 * M_PI * j * k / 3.0);
  std::vector<Operator> kraus{std::sqrt(1.0 - p) * identity(3)};
  for (int j = 0; j < 3; ++j) {
    const Operator proj = f.col(j) * f.col(j).adjoint();
    kraus.push_back(std::sqrt(p) * proj);
  }
  return KrausChannel(std::move(kraus));
}

HolevoSearchOptions quick(int restarts) {
  HolevoSearchOptions o;
  o.restarts = restarts;
  return o;
}

}  // namespace

TEST(holevo_search, depolarising_matches_closed_form) {
  for (double q : {0.25, 0.5, 0.75}) {
    EXPECT_NEAR(holevo_maximize(depolarising(q, 2), quick(10)).value, classical_capacity_depolarising(q), 1e-4);
  }
}

TEST(holevo_search, finds_non_computational_optimum) {
  const double p = 0.3;
  const KrausChannel ch = dephasing_x(p);
  EXPECT_NEAR(holevo_of_ensemble(ch, Ensemble::computational_basis(2)), 1.0 - h2(p), 1e-12);
  const auto result = holevo_maximize(ch, quick(20));
  EXPECT_NEAR(result.value, 1.0, 1e-4);
}

TEST(holevo_search, qutrit_search) {
  EXPECT_NEAR(holevo_maximize(identity_channel(3), quick(2)).value, std::log2(3.0), 1e-6);
  const KrausChannel ch = fourier_dephasing_qutrit(0.5);
  const double basis = holevo_of_ensemble(ch, Ensemble::computational_basis(3));
  const auto result = holevo_maximize(ch, quick(10));
  EXPECT_LT(basis, std::log2(3.0) - 0.1);
  EXPECT_NEAR(result.value, std::log2(3.0), 1e-3);
}

TEST(holevo_search, reported_ensemble_achieves_value) {
  const KrausChannel ch = dephasing_x(0.2);
  const auto result = holevo_maximize(ch, quick(5));
  EXPECT_EQ(result.ensemble.members().size(), 4u);
  EXPECT_NEAR(holevo_of_ensemble(ch, result.ensemble), result.value, 1e-9);
  for (const auto& m : result.ensemble.members()) EXPECT_NEAR(purity(m.state), 1.0, 1e-9);
}

TEST(holevo_search, seeded_and_deterministic) {
  Rng rng(3);
  const KrausChannel ch = random_bistochastic(2, 3, rng);
  const auto a = holevo_maximize(ch, quick(6));
  const auto b = holevo_maximize(ch, quick(6));
  EXPECT_EQ(a.value, b.value);
}

TEST(holevo_search, never_below_basis_start_and_bounded) {
  Rng rng(4);
  for (int s = 0; s < 5; ++s) {
    const KrausChannel ch = random_bistochastic(2, 2, rng);
    const double found = holevo_maximize(ch, quick(4)).value;
    EXPECT_GE(found, holevo_of_ensemble(ch, Ensemble::computational_basis(2)) - 1e-12);
    EXPECT_LE(found, 1.0 + 1e-12);
  }
}

TEST(holevo_search, unsupported_dimensions) {
  EXPECT_THROW(holevo_maximize(depolarising(0.5, 4)), DomainError);
  HolevoSearchOptions bad;
  bad.restarts = 0;
  EXPECT_THROW(holevo_maximize(depolarising(0.5, 2), bad), DomainError);
}
