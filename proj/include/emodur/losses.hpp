// Copyright (c) 2026 emodur authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <span>

#include "emodur/tensor.hpp"

namespace emodur {

// Precomputed mel-feature matrix (frames x mel bins), ingested from outside.
using FeatureMatrix = Tensor;

// Clamp bounds on sigma = exp(log_sigma) in the uncertainty losses.
inline constexpr double kSigmaFloor = 1e-3;
inline constexpr double kSigmaCeil = 1e3;

// Weights of the composite conversion loss. lambda1..3 scale externally
// computed terms and default to 1 (artifact defaults, not reported values);
// lambda4 scales the duration loss and defaults to 2.
struct LossWeights {
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  double lambda3 = 1.0;
  double lambda4 = 2.0;

  // Rejects negative or non-finite weights.
  void validate() const;
};

// Per-term inputs to the composite loss. Absent optional terms contribute 0.
struct CompositeParts {
  std::optional<double> gan;
  std::optional<double> recon;
  std::optional<double> ser;
  double dur = 0.0;
};

enum class CccStatus {
  kOk,
  kDegenerateVariance,  // both series constant with unequal means
};

// Mean squared / absolute error over log durations. Reject empty or
// mismatched inputs.
double loss_mse(std::span<const double> pred, std::span<const double> target);
double loss_abs(std::span<const double> pred, std::span<const double> target);

// Mean Gaussian negative log-likelihood with per-position sigma =
// clamp(exp(pred_log_sigma)). Rejects non-finite sigma.
double loss_nll(std::span<const double> pred_mean,
                std::span<const double> pred_log_sigma,
                std::span<const double> target);

// Concordance correlation coefficient with population (1/n) moments:
// 2 cov / (var_x + var_y + (mean_x - mean_y)^2). Requires length >= 2 and a
// nonzero denominator. When both series are constant with unequal means the
// result is 0 and `status` (if given) reports the degeneracy.
double ccc(std::span<const double> x, std::span<const double> y,
           CccStatus* status = nullptr);

// 1 - ccc(e_true, e_pred) over externally supplied SER predictions.
double loss_ser(std::span<const double> e_true,
                std::span<const double> e_pred, CccStatus* status = nullptr);

// Sum of absolute elementwise differences; shapes must match.
double loss_recon(const FeatureMatrix& a, const FeatureMatrix& b);

// lambda1*gan + lambda2*recon + lambda3*ser + lambda4*dur.
double loss_composite(const CompositeParts& parts, const LossWeights& w);

}  // namespace emodur
