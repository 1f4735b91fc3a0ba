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
#include <vector>

#include "emodur/corpus.hpp"
#include "emodur/duration_predictor.hpp"
#include "emodur/losses.hpp"

namespace emodur {

struct TrainConfig {
  LossVariant variant = LossVariant::kMse;
  PredictorConfig predictor;  // vocabulary is taken from the corpus
  std::size_t epochs = 200;
  std::size_t batch_size = 32;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_epsilon = 1e-8;
  std::uint64_t seed = 1;  // weight init, split and batch order
  std::size_t patience = 10;
  double val_fraction = 0.1;
  std::size_t worker_threads = 2;
  LossWeights loss_weights;  // echoed into reports; external terms only

  void validate() const;
};

// One line per (epoch, split). Epoch 0 is the pre-training validation pass.
struct LogEntry {
  std::size_t epoch;
  std::string split;  // "train" or "val"
  double loss;
};

struct TrainResult {
  DurationModel model;  // parameters of the best validation epoch
  std::vector<LogEntry> log;
  std::size_t best_epoch = 0;
  double best_val_loss = 0.0;
  std::size_t epochs_run = 0;
};

// Trains the configured variant on corpus minus a held-out validation
// fraction. Deterministic given cfg.seed. Aborts with
// TrainingDivergedError on a non-finite loss. The whole run executes under a
// TrainingPhaseGuard: predicted durations are never reversed or consumed.
TrainResult train(const Corpus& corpus, const TrainConfig& cfg);

// Same, over explicit pre-split corpora.
TrainResult train_on_splits(const Corpus& train_corpus,
                            const Corpus& val_corpus, const TrainConfig& cfg);

std::string training_log_to_jsonl(const std::vector<LogEntry>& log);

// Config JSON (used by the C API and CLI); unknown keys are rejected.
TrainConfig train_config_from_json(const std::string& text);
std::string train_config_to_json(const TrainConfig& cfg);

}  // namespace emodur
