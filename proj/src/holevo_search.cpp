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

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>

#include "qflip/capacity.hpp"

namespace qflip {

namespace {

// Unit vector in R^n from n-1 hyperspherical angles.
void unit_from_angles(const double* a, int n, double* out) {
  double s = 1.0;
  for (int i = 0; i < n - 1; ++i) {
    out[i] = s * std::cos(a[i]);
    s *= std::sin(a[i]);
  }
  out[n - 1] = s;
}

void angles_from_unit(const double* v, int n, double* a) {
  double tail = 0.0;
  for (int i = n - 1; i >= 0; --i) {
    // tail holds the squared norm of v[i+1..]
    if (i <= n - 2) {
      if (i == n - 2) {
        a[i] = std::atan2(v[n - 1], v[n - 2]);
      } else {
        a[i] = std::atan2(std::sqrt(tail), v[i]);
      }
    }
    tail += v[i] * v[i];
  }
}

double entropy_bits(const Operator& rho) {
  if (rho.rows() == 2) {
    const double a = rho(0, 0).real();
    const double c = rho(1, 1).real();
    const double r = std::sqrt((a - c) * (a - c) + 4.0 * std::norm(rho(0, 1)));
    const double t = a + c;
    return -xlog2x((t + r) / 2.0) - xlog2x((t - r) / 2.0);
  }
  Eigen::SelfAdjointEigenSolver<Operator> es(rho, Eigen::EigenvaluesOnly);
  double h = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) h -= xlog2x(std::max(es.eigenvalues()(i), 0.0));
  return h;
}

class Problem {
 public:
  Problem(const KrausChannel& ch) : ch_(ch), d_(ch.dim_in()), members_(static_cast<int>(d_ * d_)) {}

  int state_angles() const { return static_cast<int>(2 * d_ - 1); }
  int size() const { return members_ * state_angles() + members_ - 1; }

  void decode(const double* x, std::vector<double>& probs, std::vector<StateVector>& states) const {
    const int n = static_cast<int>(2 * d_);
    std::vector<double> v(static_cast<std::size_t>(std::max(n, members_)));
    states.assign(static_cast<std::size_t>(members_), StateVector(d_));
    for (int m = 0; m < members_; ++m) {
      unit_from_angles(x + m * state_angles(), n, v.data());
      for (Eigen::Index k = 0; k < d_; ++k) states[static_cast<std::size_t>(m)](k) = Complex(v[2 * k], v[2 * k + 1]);
    }
    unit_from_angles(x + members_ * state_angles(), members_, v.data());
    probs.resize(static_cast<std::size_t>(members_));
    double total = 0.0;
    for (int m = 0; m < members_; ++m) total += probs[static_cast<std::size_t>(m)] = v[m] * v[m];
    for (auto& p : probs) p /= total;
  }

  void encode(const std::vector<double>& probs, const std::vector<StateVector>& states, double* x) const {
    const int n = static_cast<int>(2 * d_);
    std::vector<double> v(static_cast<std::size_t>(std::max(n, members_)));
    for (int m = 0; m < members_; ++m) {
      for (Eigen::Index k = 0; k < d_; ++k) {
        v[2 * k] = states[static_cast<std::size_t>(m)](k).real();
        v[2 * k + 1] = states[static_cast<std::size_t>(m)](k).imag();
      }
      angles_from_unit(v.data(), n, x + m * state_angles());
    }
    for (int m = 0; m < members_; ++m) v[m] = std::sqrt(probs[static_cast<std::size_t>(m)]);
    angles_from_unit(v.data(), members_, x + members_ * state_angles());
  }

  double holevo(const double* x) const {
    decode(x, probs_, states_);
    const auto dout = ch_.dim_out();
    Operator avg = Operator::Zero(dout, dout);
    double conditional = 0.0;
    for (int m = 0; m < members_; ++m) {
      const double p = probs_[static_cast<std::size_t>(m)];
      Operator out = Operator::Zero(dout, dout);
      for (const auto& k : ch_.kraus()) {
        const StateVector w = k * states_[static_cast<std::size_t>(m)];
        out.noalias() += w * w.adjoint();
      }
      avg += p * out;
      if (p > 0.0) conditional += p * entropy_bits(out);
    }
    return entropy_bits(avg) - conditional;
  }

  Eigen::Index dim() const { return d_; }
  int members() const { return members_; }

 private:
  const KrausChannel& ch_;
  Eigen::Index d_;
  int members_;
  mutable std::vector<double> probs_;
  mutable std::vector<StateVector> states_;
};

double negative_holevo(const gsl_vector* x, void* params) {
  const double v = static_cast<const Problem*>(params)->holevo(x->data);
  return std::isfinite(v) ? -v : std::numeric_limits<double>::max();
}

}  // namespace

HolevoSearchResult holevo_maximize(const KrausChannel& ch, const HolevoSearchOptions& opts) {
  if (ch.dim_in() != 2 && ch.dim_in() != 3) throw DomainError("holevo_maximize: only d = 2 and d = 3 are supported");
  if (opts.restarts < 1 || opts.iterations < 1) throw DomainError("holevo_maximize: restarts and iterations must be positive");
  gsl_set_error_handler_off();

  const Problem problem(ch);
  const auto d = problem.dim();
  const int n = problem.size();
  Rng rng(opts.seed);
  std::uniform_real_distribution<double> angle(0.0, M_PI);

  gsl_multimin_function fn{&negative_holevo, static_cast<std::size_t>(n), const_cast<Problem*>(&problem)};
  gsl_multimin_fminimizer* solver = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n);
  gsl_vector* x = gsl_vector_alloc(n);
  gsl_vector* step = gsl_vector_alloc(n);

  std::vector<double> best_x(static_cast<std::size_t>(n));
  double best = -std::numeric_limits<double>::infinity();

  for (int r = 0; r < opts.restarts; ++r) {
    if (r == 0) {
      std::vector<double> probs(static_cast<std::size_t>(problem.members()), 0.0);
      std::vector<StateVector> states;
      for (int m = 0; m < problem.members(); ++m) {
        states.push_back(ket(d, m < d ? m : 0));
        if (m < d) probs[static_cast<std::size_t>(m)] = 1.0 / static_cast<double>(d);
      }
      problem.encode(probs, states, x->data);
      gsl_vector_set_all(step, 0.1);
    } else {
      for (int i = 0; i < n; ++i) gsl_vector_set(x, i, angle(rng));
      gsl_vector_set_all(step, 0.5);
    }
    const double start = -negative_holevo(x, const_cast<Problem*>(&problem));
    if (start > best) {
      best = start;
      std::copy(x->data, x->data + n, best_x.begin());
    }
    gsl_multimin_fminimizer_set(solver, &fn, x, step);
    for (int it = 0; it < opts.iterations; ++it) {
      if (gsl_multimin_fminimizer_iterate(solver) != GSL_SUCCESS) break;
      if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(solver), 1e-10) == GSL_SUCCESS) break;
    }
    const double value = -solver->fval;
    if (value > best) {
      best = value;
      std::copy(solver->x->data, solver->x->data + n, best_x.begin());
    }
  }
  gsl_vector_free(step);
  gsl_vector_free(x);
  gsl_multimin_fminimizer_free(solver);

  std::vector<double> probs;
  std::vector<StateVector> states;
  problem.decode(best_x.data(), probs, states);
  std::vector<Ensemble::Member> members;
  for (std::size_t m = 0; m < probs.size(); ++m) {
    members.push_back({probs[m], DensityMatrix::pure(states[m].normalized())});
  }
  return {best, Ensemble(std::move(members))};
}

}  // namespace qflip
