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
#include <string>
#include <vector>

#include "emodur/corpus.hpp"
#include "emodur/duration_predictor.hpp"

namespace emodur {

struct EvalRow {
  std::string record_id;
  double source_arousal = 0.0;
  double target_arousal = 0.0;
  double source_seconds = 0.0;
  double converted_seconds = 0.0;
};

struct ConversionResult {
  UnitSequence units;  // duration-modeled frame-level sequence
  EvalRow row;
};

// Dedups the record's units, predicts under the target label, reverses the
// log durations and expands. Rejects records whose ids exceed the model
// vocabulary.
ConversionResult convert_durations(
    const DurationModel& model, const Corpus& corpus,
    const UtteranceRecord& record, const ArousalLabel& target,
    ClampMode mode = ClampMode::kPaperCorrected);

struct ArousalBinStat {
  int arousal_level = 0;  // 1..7
  double mean_seconds = 0.0;
  double std_seconds = 0.0;
  std::size_t count = 0;
};

struct EvalReport {
  std::vector<ArousalBinStat> bins;  // one per target level 1..7
  double delta_1_7 = 0.0;            // mean seconds at 1 minus at 7
  double dur_mse = 0.0;              // self-prediction at the source label
  double dur_abs = 0.0;
  std::optional<double> dur_nll;     // uncert models only
  double ccc_log_durations = 0.0;    // predicted vs true log durations

  // config echo
  std::string variant;
  PredictorConfig predictor;
  std::string clamp_mode;
  std::vector<int> targets;
  std::size_t n_records = 0;
  std::uint64_t seed = 0;  // the model's init seed
};

// Converts every record at every integer target arousal 1..7 and aggregates.
// Records may fan out over worker threads; assembly is by record order, so
// the report is deterministic. Rejects an empty corpus.
EvalReport evaluate(const DurationModel& model, const Corpus& corpus,
                    ClampMode mode = ClampMode::kPaperCorrected,
                    std::size_t worker_threads = 2);

std::string report_to_json(const EvalReport& report);
EvalReport report_from_json(const std::string& text);

// (arousal_level, mean_seconds, std_seconds) rows for plotting.
std::string report_to_csv(const EvalReport& report);

// Human-readable summary table.
std::string report_to_table(const EvalReport& report);

std::string eval_rows_to_json(const std::vector<EvalRow>& rows);

}  // namespace emodur
