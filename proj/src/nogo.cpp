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

#include "qflip/nogo.hpp"

#include <algorithm>
#include <cmath>

#include "qflip/timeflip.hpp"

namespace qflip {

namespace {

constexpr int kThetaSamples = 24;
constexpr int kUnitariesPerSample = 3;

double spectral_norm_hermitian(const Operator& m) {
  const auto ev = eigvals_hermitian((m + m.adjoint()) / 2.0);
  return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

double flip_identity_distance(const KrausChannel& ch, const DensityMatrix& omega) {
  const KrausChannel plain = compose(append_state_channel(ch.dim_out(), omega), ch);
  return choi_distance(flipped_channel(ch, omega), plain);
}

double sym_chan_flip_identity(const KrausChannel& ch, const DensityMatrix& omega) {
  for (const auto& k : ch.kraus()) {
    if (k.rows() != k.cols() || (k - k.transpose()).cwiseAbs().maxCoeff() > tol::sym_flip) {
      throw ValidationError("sym_chan_flip_identity: Kraus operator is not symmetric");
    }
  }
  return flip_identity_distance(ch, omega);
}

LemmaReport fixed_output_check(const KrausChannel& decode, const DensityMatrix& rho, Eigen::Index d,
                               const std::string& family) {
  if (rho.dim() != d || decode.dim_in() != d) throw DimensionError("fixed_output_check: dimension mismatch");
  const double h = tol::fd_step;
  LemmaReport report;
  report.family = family;
  for (Eigen::Index m = 0; m < d; ++m) {
    for (Eigen::Index n = m + 1; n < d; ++n) {
      for (int k = 0; k < kThetaSamples; ++k) {
        const double theta = M_PI * k / kThetaSamples;
        const Operator up = decode.apply(projection_channel(theta + h, m, n, d).apply(rho.op()));
        const Operator down = decode.apply(projection_channel(theta - h, m, n, d).apply(rho.op()));
        report.max_derivative_norm =
            std::max(report.max_derivative_norm, spectral_norm_hermitian((up - down) / (2.0 * h)));
      }
    }
  }
  const Operator fixed = decode.apply(uniform_projection_channel(d).apply(rho.op()));
  const Operator mixed = decode.apply(DensityMatrix::maximally_mixed(d).op());
  report.fixed_output_distance = spectral_norm_hermitian(fixed - mixed);
  report.hypothesis_met = report.max_derivative_norm <= tol::vanishing_derivative;
  if (report.hypothesis_met) {
    report.verdict = report.fixed_output_distance <= tol::fixed_output ? Verdict::pass : Verdict::fail;
  }
  return report;
}

LemmaReport side_channel_scan(const Supermap& supermap, Eigen::Index d, int samples, std::uint64_t seed,
                              const std::string& family) {
  if (samples < 2) throw DomainError("side_channel_scan: at least two samples are required");
  Rng rng(seed);
  std::vector<KrausChannel> outputs;
  for (int s = 0; s < samples; ++s) outputs.push_back(supermap(random_bistochastic(d, kUnitariesPerSample, rng)));

  LemmaReport report;
  report.family = family;
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    for (std::size_t j = i + 1; j < outputs.size(); ++j) {
      if (outputs[i].dim_in() != outputs[j].dim_in() || outputs[i].dim_out() != outputs[j].dim_out()) {
        throw DimensionError("side_channel_scan: supermap outputs differ in dimension");
      }
      report.max_derivative_norm = std::max(report.max_derivative_norm, choi_distance(outputs[i], outputs[j]));
    }
  }
  report.hypothesis_met = report.max_derivative_norm <= tol::constant_output;
  // Choi of a constant channel is sigma ⊗ I (output factor first).
  const auto& common = outputs.front();
  const Operator choi = choi_sum(common.kraus());
  const auto dout = common.dim_out();
  const auto din = common.dim_in();
  const Operator sigma = partial_trace(choi, dout, din, Subsystem::A) / static_cast<double>(din);
  report.fixed_output_distance = spectral_norm_hermitian(choi - tensor_product(sigma, identity(din)));
  if (report.hypothesis_met) {
    report.verdict = report.fixed_output_distance <= tol::constant_output ? Verdict::pass : Verdict::fail;
  }
  return report;
}

}  // namespace qflip
