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

#include <functional>
#include <string>

#include "emodur/param_store.hpp"
#include "emodur/tape.hpp"

namespace emodur {

struct GradCheckReport {
  double max_rel_error = 0.0;
  std::string worst_param;
  std::size_t worst_index = 0;
};

// Compares analytic gradients against central finite differences.
//
// `build_loss` must construct the full forward pass on the given tape (which
// is bound to `params`) and return the scalar loss node; it is re-invoked for
// every perturbed evaluation, so it must not cache tape state. The relative
// error per entry is |analytic - numeric| / max(1, |analytic|, |numeric|).
//
// Throws InvalidArgumentError if epsilon <= 0 and Error if the loss is not
// finite at the evaluation point.
GradCheckReport gradcheck(
    ParamStore& params,
    const std::function<Tape::NodeId(Tape&)>& build_loss,
    double epsilon = 1e-4);

}  // namespace emodur
