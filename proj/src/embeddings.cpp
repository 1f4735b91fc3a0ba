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

#include "emodur/embeddings.hpp"

#include <cmath>

#include "emodur/errors.hpp"

namespace emodur {

SpeakerVector::SpeakerVector(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.size() != kSpeakerDim) {
    throw InvalidArgumentError("speaker vector must have " +
                               std::to_string(kSpeakerDim) +
                               " entries, got " +
                               std::to_string(values_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw InvalidArgumentError("speaker vector has non-finite entries");
    }
  }
}

EmotionEmbedding::EmotionEmbedding(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.size() != kEmotionDim) {
    throw InvalidArgumentError("emotion embedding must have " +
                               std::to_string(kEmotionDim) +
                               " entries, got " +
                               std::to_string(values_.size()));
  }
}

ArousalLabel::ArousalLabel(double value) : value_(value) {
  if (!std::isfinite(value_) || value_ < kArousalMin || value_ > kArousalMax) {
    throw InvalidArgumentError("arousal label " + std::to_string(value) +
                               " outside [1, 7]");
  }
}

EmotionEmbedding embed_emotion(const ArousalLabel& label,
                               std::span<const double> weights,
                               std::span<const double> bias) {
  if (weights.size() != kEmotionDim || bias.size() != kEmotionDim) {
    throw InvalidArgumentError(
        "emotion map weights and bias must each have " +
        std::to_string(kEmotionDim) + " entries");
  }
  std::vector<double> out(kEmotionDim);
  for (std::size_t j = 0; j < kEmotionDim; ++j) {
    out[j] = label.value() * weights[j] + bias[j];
  }
  return EmotionEmbedding(std::move(out));
}

Tape::NodeId embed_emotion_node(Tape& tape, const ArousalLabel& label,
                                Tape::NodeId weights, Tape::NodeId bias) {
  return tape.affine_scalar(label.value(), weights, bias);
}

Tape::NodeId embed_units_node(Tape& tape, std::span<const UnitId> units,
                              Tape::NodeId table) {
  return tape.gather_rows(table, units);
}

Tape::NodeId broadcast_concat_node(Tape& tape, Tape::NodeId unit_emb,
                                   Tape::NodeId speaker,
                                   Tape::NodeId emotion) {
  return tape.concat_broadcast(unit_emb, speaker, emotion);
}

}  // namespace emodur
