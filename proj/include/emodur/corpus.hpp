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

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "emodur/losses.hpp"
#include "emodur/unit_codec.hpp"

namespace emodur {

// One labeled utterance: frame-level units plus conditioning metadata.
// speaker_vector, when absent, falls back to the corpus-level speaker map.
struct UtteranceRecord {
  std::string id;
  std::string speaker_id;
  double arousal = 4.0;
  std::vector<UnitId> units;
  double frame_rate_hz = kDefaultFrameRateHz;
  std::optional<std::vector<double>> speaker_vector;
  std::optional<double> ser_prediction;
  std::optional<FeatureMatrix> mel;

  double seconds() const {
    return static_cast<double>(units.size()) / frame_rate_hz;
  }
};

// A validated collection of utterance records plus file-level metadata.
struct Corpus {
  int format_version = 1;
  std::size_t vocabulary = 100;
  double frame_rate_hz = kDefaultFrameRateHz;
  std::map<std::string, std::vector<double>> speakers;  // shared d-vectors
  std::vector<UtteranceRecord> records;

  // Checks every record invariant (ids in vocab, arousal in [1,7],
  // vector lengths, unique record ids). Throws InvalidArgumentError naming
  // the offending record.
  void validate() const;

  // Record-level vector if present, else the shared per-speaker vector,
  // else null.
  const std::vector<double>* speaker_vector_for(
      const UtteranceRecord& rec) const;
};

// Synthetic corpus generator. Plants per-unit durations
//   d_u = max(1, round(exp(b0 - b1 * (arousal - 4) + eps_u))),
//   eps_u ~ Normal(0, lognormal_sigma),
// with arousal ~ Normal(arousal_mean, arousal_std) clipped to [1, 7], and
// multiplies a duration by 5 with probability outlier_rate. Durations are
// planted in log space, so the Gaussian assumption of the uncertainty loss
// holds by construction.
struct GeneratorConfig {
  std::size_t n_utterances = 2000;
  std::size_t vocabulary = 100;
  std::size_t units_per_utt = 100;
  std::size_t n_speakers = 8;
  double arousal_mean = 4.0;
  double arousal_std = 0.95;
  double base_log_duration = std::log(2.0);  // b0, log-frames
  double arousal_slope = 0.012;              // b1; positive = inverse relation
  double lognormal_sigma = 0.25;
  double outlier_rate = 0.0;
  std::uint64_t seed = 1;

  void validate() const;
};

// Fully reproducible from cfg.seed; same seed, same corpus, bit for bit.
Corpus generate(const GeneratorConfig& cfg);

// JSON-lines corpus files: one header object then one record per line.
// Paths ending in .gz read/write gzip. Loading reports malformed lines with
// their line number and rejects id collisions and invariant violations.
Corpus load_corpus(const std::string& path);
void save_corpus(const Corpus& corpus, const std::string& path);

struct SplitRatios {
  double train = 0.8;
  double val = 0.1;
  double test = 0.1;
};

struct CorpusSplit {
  Corpus train;
  Corpus val;
  Corpus test;
};

// Deterministic, disjoint, exhaustive split with exact global sizes
// (largest-remainder) and per-speaker stratification where counts allow.
CorpusSplit split(const Corpus& corpus, const SplitRatios& ratios,
                  std::uint64_t seed);

// Config JSON (used by the C API and CLI); unknown keys are rejected.
GeneratorConfig generator_config_from_json(const std::string& text);
std::string generator_config_to_json(const GeneratorConfig& cfg);

}  // namespace emodur
