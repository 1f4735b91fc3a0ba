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

#include <map>
#include <string>
#include <vector>

#include "emodur/tensor.hpp"

namespace emodur {

// Named parameter tensors with same-shape gradient buffers. Names are unique.
// Iteration is lexicographic by name, which keeps optimizer updates and
// serialization deterministic.
class ParamStore {
 public:
  // Registers a parameter and allocates its zero gradient buffer.
  // Throws InvalidArgumentError on duplicate names.
  Tensor& add(const std::string& name, Tensor value);

  bool has(const std::string& name) const;
  Tensor& value(const std::string& name);
  const Tensor& value(const std::string& name) const;
  Tensor& grad(const std::string& name);
  const Tensor& grad(const std::string& name) const;

  std::vector<std::string> names() const;
  std::size_t total_size() const;
  void zero_grads();

  // Same names and shapes, values and gradients zeroed. Used as a private
  // gradient sink by worker threads.
  ParamStore clone_shapes() const;

  // Accumulates every gradient buffer of `other` into this store's.
  void add_grads(const ParamStore& other);

 private:
  struct Entry {
    Tensor value;
    Tensor grad;
  };
  std::map<std::string, Entry> entries_;

  const Entry& entry(const std::string& name) const;
  Entry& entry(const std::string& name);
};

}  // namespace emodur
