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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "emodur/param_store.hpp"
#include "emodur/tensor.hpp"

namespace emodur {

// Reverse-mode tape over 2-D tensors. Operations append nodes during the
// forward pass; backward() seeds the scalar loss node and walks the nodes in
// reverse, routing leaf gradients into a caller-supplied ParamStore sink.
//
// A tape is single-use and single-threaded. Distinct tapes over the same
// (read-only) parameters may run concurrently.
class Tape {
 public:
  using NodeId = std::size_t;

  explicit Tape(const ParamStore* params = nullptr) : params_(params) {}

  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  // Leaf holding a fixed value. No gradient is reported for it.
  NodeId constant(Tensor value);

  // Leaf bound to the named parameter of the attached store. Its gradient is
  // accumulated into the sink passed to backward().
  NodeId param(const std::string& name);

  // Same-length 1-D convolution over rows with zero padding. `kernel` is
  // (K*Cin) x Cout with row index k*Cin + ci, `bias` is 1 x Cout, K odd.
  NodeId conv1d(NodeId input, NodeId kernel, NodeId bias,
                std::size_t kernel_size);

  // Affine map per row: out = input * weight + bias. weight Cin x Cout,
  // bias 1 x Cout.
  NodeId linear(NodeId input, NodeId weight, NodeId bias);

  // Elementwise max(0, x).
  NodeId relu(NodeId x);

  // Row gather: out row u = table row ids[u]. Gradient scatters by id.
  NodeId gather_rows(NodeId table, std::span<const std::int32_t> ids);

  // Every output row is [unit_emb row | broadcast | broadcast2] where the
  // broadcast inputs are 1-row tensors repeated across all rows. Their
  // gradients sum over rows.
  NodeId concat_broadcast(NodeId unit_emb, NodeId broadcast,
                          NodeId broadcast2);

  // 1-row affine in a scalar: out = x * weight + bias, all 1 x D.
  NodeId affine_scalar(double x, NodeId weight, NodeId bias);

  // Single column as a U x 1 tensor.
  NodeId column(NodeId x, std::size_t col);

  // Sum of all entries as 1 x 1.
  NodeId sum(NodeId x);

  // Mean losses over a U x 1 prediction column vs. a length-U target.
  NodeId mse_loss(NodeId pred, std::span<const double> target);
  NodeId l1_loss(NodeId pred, std::span<const double> target);

  // Gaussian negative log-likelihood with sigma = clamp(exp(log_sigma)).
  // Gradient through log_sigma is zero wherever the clamp is active.
  NodeId nll_loss(NodeId mean, NodeId log_sigma,
                  std::span<const double> target);

  const Tensor& value(NodeId id) const;
  const Tensor& grad(NodeId id) const;

  // Seeds the 1x1 node `loss` with `scale` and propagates. Parameter-leaf
  // gradients accumulate into `sink` (same names/shapes as the bound store);
  // repeated calls keep accumulating until the sink's grads are zeroed.
  // Throws InvalidArgumentError if `loss` is not scalar or the tape is empty.
  void backward(NodeId loss, ParamStore* sink, double scale = 1.0);

 private:
  struct Node {
    Tensor value;
    Tensor grad;
    std::function<void(Tape&)> backprop;  // empty for leaves
    std::string param_name;               // nonempty for param leaves
  };

  const ParamStore* params_;
  std::vector<Node> nodes_;

  NodeId push(Tensor value, std::function<void(Tape&)> backprop = {},
              std::string param_name = {});
  Tensor& grad_buf(NodeId id);
  const Tensor& val(NodeId id) const { return nodes_[id].value; }
  void check_id(NodeId id) const;
};

}  // namespace emodur
