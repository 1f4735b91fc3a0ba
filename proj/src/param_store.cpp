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

#include "emodur/param_store.hpp"

#include "emodur/errors.hpp"

namespace emodur {

Tensor& ParamStore::add(const std::string& name, Tensor value) {
  auto [it, inserted] = entries_.try_emplace(name);
  if (!inserted) {
    throw InvalidArgumentError("duplicate parameter name: " + name);
  }
  it->second.grad = Tensor(value.rows(), value.cols(), 0.0);
  it->second.value = std::move(value);
  return it->second.value;
}

bool ParamStore::has(const std::string& name) const {
  return entries_.count(name) != 0;
}

const ParamStore::Entry& ParamStore::entry(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) {
    throw InvalidArgumentError("unknown parameter: " + name);
  }
  return it->second;
}

ParamStore::Entry& ParamStore::entry(const std::string& name) {
  return const_cast<Entry&>(
      static_cast<const ParamStore*>(this)->entry(name));
}

Tensor& ParamStore::value(const std::string& name) { return entry(name).value; }
const Tensor& ParamStore::value(const std::string& name) const {
  return entry(name).value;
}
Tensor& ParamStore::grad(const std::string& name) { return entry(name).grad; }
const Tensor& ParamStore::grad(const std::string& name) const {
  return entry(name).grad;
}

std::vector<std::string> ParamStore::names() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [name, _] : entries_) out.push_back(name);
  return out;
}

std::size_t ParamStore::total_size() const {
  std::size_t n = 0;
  for (const auto& [_, e] : entries_) n += e.value.size();
  return n;
}

void ParamStore::zero_grads() {
  for (auto& [_, e] : entries_) e.grad.fill(0.0);
}

ParamStore ParamStore::clone_shapes() const {
  ParamStore out;
  for (const auto& [name, e] : entries_) {
    out.add(name, Tensor(e.value.rows(), e.value.cols(), 0.0));
  }
  return out;
}

void ParamStore::add_grads(const ParamStore& other) {
  for (auto& [name, e] : entries_) {
    e.grad.add(other.grad(name));
  }
}

}  // namespace emodur
