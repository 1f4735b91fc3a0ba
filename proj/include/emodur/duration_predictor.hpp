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

#include <cstdint>
#include <optional>
#include <string>

#include "emodur/embeddings.hpp"
#include "emodur/param_store.hpp"
#include "emodur/tape.hpp"
#include "emodur/unit_codec.hpp"

namespace emodur {

// Duration-loss flavor; also fixes the head width (1 column for mse/l1,
// mean + log-sigma columns for uncert).
enum class LossVariant { kMse, kL1, kUncert };

std::string to_string(LossVariant v);
LossVariant variant_from_string(const std::string& s);

struct PredictorConfig {
  std::size_t vocabulary = 100;     // V
  std::size_t unit_embed_dim = 128; // E
  std::size_t hidden_dim = 256;     // H
  std::size_t kernel_size = 3;      // K, odd

  void validate() const;
};

// Per-position predictions in log-frame units.
struct DurationPrediction {
  std::vector<double> log_durations;
  std::vector<double> log_sigma;  // empty unless the model has an uncert head

  std::size_t size() const { return log_durations.size(); }
};

// The duration predictor: unit lookup table -> concat with broadcast speaker
// and emotion embeddings -> conv, relu, conv, relu, linear head.
class DurationModel {
 public:
  // Fresh model with seeded parameter init.
  DurationModel(const PredictorConfig& config, LossVariant variant,
                std::uint64_t init_seed);

  struct ForwardNodes {
    Tape::NodeId log_duration;                 // U x 1
    std::optional<Tape::NodeId> log_sigma;     // U x 1, uncert only
  };

  // Builds the forward pass on `tape`, which must be bound to params().
  // `units` must be de-duplicated (no equal consecutive ids) and in-vocab.
  ForwardNodes forward(Tape& tape, std::span<const UnitId> units,
                       const SpeakerVector& speaker,
                       const ArousalLabel& label) const;

  const PredictorConfig& config() const { return config_; }
  LossVariant variant() const { return variant_; }
  std::uint64_t init_seed() const { return init_seed_; }
  std::size_t head_width() const {
    return variant_ == LossVariant::kUncert ? 2 : 1;
  }

  ParamStore& params() { return params_; }
  const ParamStore& params() const { return params_; }

 private:
  PredictorConfig config_;
  LossVariant variant_;
  std::uint64_t init_seed_;
  ParamStore params_;

  void init_params(std::uint64_t seed);
};

// Inference entry point: one prediction per de-duplicated position,
// deterministic given parameters. Rejects consecutive-duplicate input and
// out-of-vocabulary ids.
DurationPrediction predict(const DurationModel& model,
                           std::span<const UnitId> units,
                           const SpeakerVector& speaker,
                           const ArousalLabel& label);

enum class ClampMode {
  // max(1, round(exp(y))): the default reversal.
  kPaperCorrected,
  // min(1, exp(y + 1)) rounded up to >= 1, kept only for traceability; it
  // maps every input to 1 frame.
  kPaperLiteral,
};

std::string to_string(ClampMode m);
ClampMode clamp_mode_from_string(const std::string& s);

// Turns log-scale predictions back into integer frame counts (all >= 1).
// Throws ContractViolationError when called under a TrainingPhaseGuard.
std::vector<std::int64_t> reverse_durations(
    const DurationPrediction& pred, ClampMode mode = ClampMode::kPaperCorrected);

// Expands de-duplicated units under explicit durations into a frame-level
// sequence. Lengths must match.
UnitSequence apply_durations(std::span<const UnitId> units,
                             std::span<const std::int64_t> durations,
                             double frame_rate_hz = kDefaultFrameRateHz);

// Single-document JSON checkpoint; round trips bit-exactly.
void save_checkpoint(const DurationModel& model, const std::string& path);
DurationModel load_checkpoint(const std::string& path);
std::string checkpoint_to_json(const DurationModel& model);
DurationModel checkpoint_from_json(const std::string& text);

// Scoped marker for training phases. While any guard is alive on the current
// thread, reverse_durations throws ContractViolationError: predicted
// durations are an inference-only product.
class TrainingPhaseGuard {
 public:
  TrainingPhaseGuard();
  ~TrainingPhaseGuard();
  TrainingPhaseGuard(const TrainingPhaseGuard&) = delete;
  TrainingPhaseGuard& operator=(const TrainingPhaseGuard&) = delete;

  static bool active();
};

// Process-wide count of reverse_durations calls, for contract instrumentation.
std::uint64_t reverse_durations_call_count();

}  // namespace emodur
