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

#include <span>
#include <vector>

#include "emodur/tape.hpp"
#include "emodur/unit_codec.hpp"

namespace emodur {

inline constexpr std::size_t kSpeakerDim = 512;
inline constexpr std::size_t kEmotionDim = 128;
inline constexpr double kArousalMin = 1.0;
inline constexpr double kArousalMax = 7.0;

// Utterance-level speaker d-vector, always 512-d. Default-constructed as
// zeros for records that ship without one.
class SpeakerVector {
 public:
  SpeakerVector() : values_(kSpeakerDim, 0.0) {}
  // Throws InvalidArgumentError unless exactly 512 finite entries.
  explicit SpeakerVector(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

// 128-d continuous emotion embedding produced by the trainable linear map.
class EmotionEmbedding {
 public:
  explicit EmotionEmbedding(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

// Scalar arousal annotation on the 1..7 scale. Serves both the source label
// (training) and the target label (inference).
class ArousalLabel {
 public:
  // Throws InvalidArgumentError outside [1, 7] or non-finite.
  explicit ArousalLabel(double value);

  double value() const { return value_; }

 private:
  double value_;
};

// z_e[j] = label * weights[j] + bias[j]. Off-tape convenience; the
// differentiable path is embed_emotion_node.
EmotionEmbedding embed_emotion(const ArousalLabel& label,
                               std::span<const double> weights,
                               std::span<const double> bias);

// Differentiable counterparts. `weights` and `bias` are 1 x 128 nodes,
// `table` is V x E; unit ids must be < V.
Tape::NodeId embed_emotion_node(Tape& tape, const ArousalLabel& label,
                                Tape::NodeId weights, Tape::NodeId bias);
Tape::NodeId embed_units_node(Tape& tape, std::span<const UnitId> units,
                              Tape::NodeId table);
Tape::NodeId broadcast_concat_node(Tape& tape, Tape::NodeId unit_emb,
                                   Tape::NodeId speaker,
                                   Tape::NodeId emotion);

}  // namespace emodur
