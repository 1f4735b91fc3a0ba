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

#include <stdexcept>
#include <string>

namespace emodur {

// Base class of all errors thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad shapes, out-of-range labels, invalid configuration values.
struct InvalidArgumentError : Error {
  using Error::Error;
};

// Filesystem and stream failures.
struct IoError : Error {
  using Error::Error;
};

// Malformed corpus lines, checkpoints, reports or config documents.
struct ParseError : Error {
  using Error::Error;
};

// Training produced a non-finite loss.
struct TrainingDivergedError : Error {
  using Error::Error;
};

// A training step tried to consume inference-only outputs.
struct ContractViolationError : Error {
  using Error::Error;
};

}  // namespace emodur
