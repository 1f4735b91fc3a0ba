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

#include "emodur/gradcheck.hpp"

#include <cmath>
#include <map>

#include "emodur/errors.hpp"

namespace emodur {

namespace {

double eval_loss(ParamStore& params,
                 const std::function<Tape::NodeId(Tape&)>& build_loss) {
  Tape tape(&params);
  const Tape::NodeId loss = build_loss(tape);
  const Tensor& v = tape.value(loss);
  if (v.rows() != 1 || v.cols() != 1) {
    throw InvalidArgumentError("gradcheck: loss node must be 1x1");
  }
  const double out = v(0, 0);
  if (!std::isfinite(out)) {
    throw Error("gradcheck: non-finite loss");
  }
  return out;
}

}  // namespace

GradCheckReport gradcheck(
    ParamStore& params,
    const std::function<Tape::NodeId(Tape&)>& build_loss, double epsilon) {
  if (!(epsilon > 0.0)) {
    throw InvalidArgumentError("gradcheck: epsilon must be positive");
  }

  params.zero_grads();
  {
    Tape tape(&params);
    const Tape::NodeId loss = build_loss(tape);
    const Tensor& v = tape.value(loss);
    if (v.rows() != 1 || v.cols() != 1) {
      throw InvalidArgumentError("gradcheck: loss node must be 1x1");
    }
    if (!std::isfinite(v(0, 0))) {
      throw Error("gradcheck: non-finite loss");
    }
    tape.backward(loss, &params);
  }
  std::map<std::string, Tensor> analytic;
  for (const auto& name : params.names()) {
    analytic.emplace(name, params.grad(name));
  }

  GradCheckReport report;
  for (const auto& name : params.names()) {
    Tensor& value = params.value(name);
    const Tensor& a = analytic.at(name);
    for (std::size_t i = 0; i < value.size(); ++i) {
      const double original = value.flat()[i];
      value.flat()[i] = original + epsilon;
      const double up = eval_loss(params, build_loss);
      value.flat()[i] = original - epsilon;
      const double down = eval_loss(params, build_loss);
      value.flat()[i] = original;

      const double numeric = (up - down) / (2.0 * epsilon);
      const double exact = a.flat()[i];
      const double rel = std::abs(exact - numeric) /
                         std::max({1.0, std::abs(exact), std::abs(numeric)});
      if (rel > report.max_rel_error) {
        report.max_rel_error = rel;
        report.worst_param = name;
        report.worst_index = i;
      }
    }
  }
  return report;
}

}  // namespace emodur
