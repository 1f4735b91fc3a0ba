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

#include "emodur/tensor.hpp"

#include <algorithm>
#include <cmath>

#include "emodur/errors.hpp"

namespace emodur {

Tensor::Tensor(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Tensor Tensor::from_data(std::size_t rows, std::size_t cols,
                         std::vector<double> data) {
  if (data.size() != rows * cols) {
    throw InvalidArgumentError("tensor data length " +
                               std::to_string(data.size()) +
                               " does not match shape " + std::to_string(rows) +
                               "x" + std::to_string(cols));
  }
  Tensor t;
  t.rows_ = rows;
  t.cols_ = cols;
  t.data_ = std::move(data);
  return t;
}

void Tensor::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

bool Tensor::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

void Tensor::add(const Tensor& other) {
  if (!same_shape(other)) {
    throw InvalidArgumentError("tensor add: shape mismatch");
  }
  const double* src = other.data_.data();
  double* dst = data_.data();
  for (std::size_t i = 0; i < data_.size(); ++i) dst[i] += src[i];
}

}  // namespace emodur
