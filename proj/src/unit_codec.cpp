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

#include "emodur/unit_codec.hpp"

#include <numeric>
#include <string>

#include "emodur/errors.hpp"

namespace emodur {

std::int64_t RunLengthSequence::total_frames() const {
  return std::accumulate(durations.begin(), durations.end(),
                         std::int64_t{0});
}

void RunLengthSequence::validate() const {
  if (units.size() != durations.size()) {
    throw InvalidArgumentError(
        "run-length sequence: units length " + std::to_string(units.size()) +
        " != durations length " + std::to_string(durations.size()));
  }
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (durations[i] < 1) {
      throw InvalidArgumentError("run-length sequence: duration " +
                                 std::to_string(durations[i]) +
                                 " < 1 at index " + std::to_string(i));
    }
    if (i > 0 && units[i] == units[i - 1]) {
      throw InvalidArgumentError(
          "run-length sequence: equal consecutive units at index " +
          std::to_string(i));
    }
  }
}

RunLengthSequence dedup(std::span<const UnitId> ids) {
  RunLengthSequence out;
  for (UnitId id : ids) {
    if (!out.units.empty() && out.units.back() == id) {
      ++out.durations.back();
    } else {
      out.units.push_back(id);
      out.durations.push_back(1);
    }
  }
  return out;
}

RunLengthSequence dedup(const UnitSequence& seq) { return dedup(seq.ids); }

UnitSequence expand(const RunLengthSequence& rls, double frame_rate_hz) {
  rls.validate();
  UnitSequence out;
  out.frame_rate_hz = frame_rate_hz;
  out.ids.reserve(static_cast<std::size_t>(rls.total_frames()));
  for (std::size_t i = 0; i < rls.units.size(); ++i) {
    out.ids.insert(out.ids.end(), static_cast<std::size_t>(rls.durations[i]),
                   rls.units[i]);
  }
  return out;
}

double seconds_of(const RunLengthSequence& rls, double frame_rate_hz) {
  if (!(frame_rate_hz > 0.0)) {
    throw InvalidArgumentError("frame rate must be positive, got " +
                               std::to_string(frame_rate_hz));
  }
  return static_cast<double>(rls.total_frames()) / frame_rate_hz;
}

}  // namespace emodur
