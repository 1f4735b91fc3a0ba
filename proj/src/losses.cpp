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

#include "emodur/losses.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "emodur/errors.hpp"

namespace emodur {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void check_pair(std::span<const double> a, std::span<const double> b,
                const char* what) {
  if (a.empty()) {
    throw InvalidArgumentError(std::string(what) + ": empty input");
  }
  if (a.size() != b.size()) {
    throw InvalidArgumentError(std::string(what) + ": length mismatch (" +
                               std::to_string(a.size()) + " vs " +
                               std::to_string(b.size()) + ")");
  }
}

double mean(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += v;
  return acc / static_cast<double>(x.size());
}

}  // namespace

void LossWeights::validate() const {
  for (double l : {lambda1, lambda2, lambda3, lambda4}) {
    if (!std::isfinite(l) || l < 0.0) {
      throw InvalidArgumentError("loss weights must be finite and >= 0");
    }
  }
}

double loss_mse(std::span<const double> pred, std::span<const double> target) {
  check_pair(pred, target, "loss_mse");
  double acc = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double d = pred[i] - target[i];
    acc += d * d;
  }
  return acc / static_cast<double>(pred.size());
}

double loss_abs(std::span<const double> pred, std::span<const double> target) {
  check_pair(pred, target, "loss_abs");
  double acc = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    acc += std::abs(pred[i] - target[i]);
  }
  return acc / static_cast<double>(pred.size());
}

double loss_nll(std::span<const double> pred_mean,
                std::span<const double> pred_log_sigma,
                std::span<const double> target) {
  check_pair(pred_mean, target, "loss_nll");
  check_pair(pred_log_sigma, target, "loss_nll");
  double acc = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    const double raw = std::exp(pred_log_sigma[i]);
    if (!std::isfinite(raw)) {
      throw InvalidArgumentError("loss_nll: non-finite sigma at position " +
                                 std::to_string(i));
    }
    const double sigma = std::clamp(raw, kSigmaFloor, kSigmaCeil);
    const double r = target[i] - pred_mean[i];
    acc += 0.5 * std::log(kTwoPi * sigma * sigma) +
           r * r / (2.0 * sigma * sigma);
  }
  return acc / static_cast<double>(target.size());
}

double ccc(std::span<const double> x, std::span<const double> y,
           CccStatus* status) {
  check_pair(x, y, "ccc");
  if (x.size() < 2) {
    throw InvalidArgumentError("ccc: needs at least 2 samples");
  }
  if (status != nullptr) *status = CccStatus::kOk;

  const double n = static_cast<double>(x.size());
  const double mx = mean(x);
  const double my = mean(y);
  double var_x = 0.0, var_y = 0.0, cov = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    var_x += dx * dx;
    var_y += dy * dy;
    cov += dx * dy;
  }
  // population (1/n) moments, per Lin's definition
  var_x /= n;
  var_y /= n;
  cov /= n;

  const double dm = mx - my;
  const double denom = var_x + var_y + dm * dm;
  if (denom == 0.0) {
    throw InvalidArgumentError(
        "ccc: both series constant with equal means (zero denominator)");
  }
  if (var_x == 0.0 && var_y == 0.0) {
    // constant series with unequal means: concordance is 0 by convention
    if (status != nullptr) *status = CccStatus::kDegenerateVariance;
    return 0.0;
  }
  return 2.0 * cov / denom;
}

double loss_ser(std::span<const double> e_true,
                std::span<const double> e_pred, CccStatus* status) {
  return 1.0 - ccc(e_true, e_pred, status);
}

double loss_recon(const FeatureMatrix& a, const FeatureMatrix& b) {
  if (!a.same_shape(b)) {
    throw InvalidArgumentError("loss_recon: feature matrix shape mismatch");
  }
  double acc = 0.0;
  const double* pa = a.flat().data();
  const double* pb = b.flat().data();
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(pa[i] - pb[i]);
  return acc;
}

double loss_composite(const CompositeParts& parts, const LossWeights& w) {
  w.validate();
  double total = w.lambda4 * parts.dur;
  if (parts.gan) total += w.lambda1 * *parts.gan;
  if (parts.recon) total += w.lambda2 * *parts.recon;
  if (parts.ser) total += w.lambda3 * *parts.ser;
  return total;
}

}  // namespace emodur
