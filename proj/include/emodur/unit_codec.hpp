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
#include <span>
#include <vector>

namespace emodur {

using UnitId = std::int32_t;

inline constexpr double kDefaultFrameRateHz = 49.0;

// Frame-level discrete speech-unit ids at a fixed frame rate. Ids are
// validated against the vocabulary at ingestion (corpus load / generation),
// so the codec itself is total over in-range data.
struct UnitSequence {
  std::vector<UnitId> ids;
  double frame_rate_hz = kDefaultFrameRateHz;
};

// De-duplicated unit ids paired with repetition counts. Invariants:
// equal lengths, no equal consecutive units, every duration >= 1.
struct RunLengthSequence {
  std::vector<UnitId> units;
  std::vector<std::int64_t> durations;

  std::int64_t total_frames() const;

  // Throws InvalidArgumentError on any invariant violation.
  void validate() const;
};

// Collapses consecutive repeats into (unit, count) pairs. Total: the empty
// sequence yields an empty result.
RunLengthSequence dedup(std::span<const UnitId> ids);
RunLengthSequence dedup(const UnitSequence& seq);

// Repeats units[i] durations[i] times. Rejects mismatched lengths, any
// duration < 1, and equal consecutive units.
UnitSequence expand(const RunLengthSequence& rls,
                    double frame_rate_hz = kDefaultFrameRateHz);

// Total frame count divided by the frame rate. Rejects rate <= 0.
double seconds_of(const RunLengthSequence& rls, double frame_rate_hz);

}  // namespace emodur
