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

#include "emodur/tape.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "emodur/errors.hpp"

namespace emodur {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void require(bool cond, const std::string& what) {
  if (!cond) throw InvalidArgumentError(what);
}

}  // namespace

Tape::NodeId Tape::push(Tensor value, std::function<void(Tape&)> backprop,
                        std::string param_name) {
  nodes_.push_back(Node{std::move(value), Tensor{}, std::move(backprop),
                        std::move(param_name)});
  return nodes_.size() - 1;
}

void Tape::check_id(NodeId id) const {
  if (id >= nodes_.size()) {
    throw InvalidArgumentError("tape: node id out of range");
  }
}

const Tensor& Tape::value(NodeId id) const {
  check_id(id);
  return nodes_[id].value;
}

const Tensor& Tape::grad(NodeId id) const {
  check_id(id);
  return nodes_[id].grad;
}

Tensor& Tape::grad_buf(NodeId id) { return nodes_[id].grad; }

Tape::NodeId Tape::constant(Tensor value) { return push(std::move(value)); }

Tape::NodeId Tape::param(const std::string& name) {
  require(params_ != nullptr, "tape: no parameter store attached");
  return push(params_->value(name), {}, name);
}

Tape::NodeId Tape::conv1d(NodeId input, NodeId kernel, NodeId bias,
                          std::size_t kernel_size) {
  check_id(input);
  check_id(kernel);
  check_id(bias);
  const Tensor& in = val(input);
  const Tensor& ker = val(kernel);
  const Tensor& b = val(bias);
  require(kernel_size % 2 == 1, "conv1d: kernel size must be odd");
  require(in.rows() >= 1, "conv1d: empty input");
  const std::size_t cin = in.cols();
  require(ker.rows() == kernel_size * cin,
          "conv1d: kernel rows != kernel_size * in_channels");
  const std::size_t cout = ker.cols();
  require(b.rows() == 1 && b.cols() == cout, "conv1d: bad bias shape");

  const std::size_t u_len = in.rows();
  const auto k_half = static_cast<std::ptrdiff_t>(kernel_size / 2);
  Tensor out(u_len, cout);
  for (std::size_t u = 0; u < u_len; ++u) {
    double* out_row = out.row(u);
    for (std::size_t co = 0; co < cout; ++co) out_row[co] = b(0, co);
    for (std::size_t k = 0; k < kernel_size; ++k) {
      // zero padding: rows outside [0, U) contribute nothing
      const std::ptrdiff_t r =
          static_cast<std::ptrdiff_t>(u) + static_cast<std::ptrdiff_t>(k) -
          k_half;
      if (r < 0 || r >= static_cast<std::ptrdiff_t>(u_len)) continue;
      const double* in_row = in.row(static_cast<std::size_t>(r));
      for (std::size_t ci = 0; ci < cin; ++ci) {
        const double x = in_row[ci];
        if (x == 0.0) continue;
        const double* w_row = ker.row(k * cin + ci);
        for (std::size_t co = 0; co < cout; ++co) out_row[co] += x * w_row[co];
      }
    }
  }

  const NodeId out_id = nodes_.size();
  return push(std::move(out),
              [input, kernel, bias, kernel_size, out_id](Tape& t) {
    const Tensor& in = t.val(input);
    const Tensor& ker = t.val(kernel);
    const Tensor& dout = t.grad_buf(out_id);
    Tensor& din = t.grad_buf(input);
    Tensor& dker = t.grad_buf(kernel);
    Tensor& dbias = t.grad_buf(bias);
    const std::size_t u_len = in.rows();
    const std::size_t cin = in.cols();
    const std::size_t cout = ker.cols();
    const auto k_half = static_cast<std::ptrdiff_t>(kernel_size / 2);

    for (std::size_t u = 0; u < u_len; ++u) {
      const double* dout_row = dout.row(u);
      for (std::size_t co = 0; co < cout; ++co) dbias(0, co) += dout_row[co];
      for (std::size_t k = 0; k < kernel_size; ++k) {
        const std::ptrdiff_t r =
            static_cast<std::ptrdiff_t>(u) + static_cast<std::ptrdiff_t>(k) -
            k_half;
        if (r < 0 || r >= static_cast<std::ptrdiff_t>(u_len)) continue;
        const std::size_t ru = static_cast<std::size_t>(r);
        const double* in_row = in.row(ru);
        double* din_row = din.row(ru);
        for (std::size_t ci = 0; ci < cin; ++ci) {
          const double* w_row = ker.row(k * cin + ci);
          double* dw_row = dker.row(k * cin + ci);
          const double x = in_row[ci];
          double acc = 0.0;
          for (std::size_t co = 0; co < cout; ++co) {
            const double g = dout_row[co];
            acc += g * w_row[co];
            dw_row[co] += g * x;
          }
          din_row[ci] += acc;
        }
      }
    }
  });
}

Tape::NodeId Tape::linear(NodeId input, NodeId weight, NodeId bias) {
  check_id(input);
  check_id(weight);
  check_id(bias);
  const Tensor& in = val(input);
  const Tensor& w = val(weight);
  const Tensor& b = val(bias);
  require(in.cols() == w.rows(), "linear: input cols != weight rows");
  require(b.rows() == 1 && b.cols() == w.cols(), "linear: bad bias shape");

  const std::size_t u_len = in.rows();
  const std::size_t cin = in.cols();
  const std::size_t cout = w.cols();
  Tensor out(u_len, cout);
  for (std::size_t u = 0; u < u_len; ++u) {
    double* out_row = out.row(u);
    for (std::size_t co = 0; co < cout; ++co) out_row[co] = b(0, co);
    const double* in_row = in.row(u);
    for (std::size_t ci = 0; ci < cin; ++ci) {
      const double x = in_row[ci];
      const double* w_row = w.row(ci);
      for (std::size_t co = 0; co < cout; ++co) out_row[co] += x * w_row[co];
    }
  }

  const NodeId out_id = nodes_.size();
  return push(std::move(out), [input, weight, bias, out_id](Tape& t) {
    const Tensor& in = t.val(input);
    const Tensor& w = t.val(weight);
    const Tensor& dout = t.grad_buf(out_id);
    Tensor& din = t.grad_buf(input);
    Tensor& dw = t.grad_buf(weight);
    Tensor& dbias = t.grad_buf(bias);
    const std::size_t u_len = in.rows();
    const std::size_t cin = in.cols();
    const std::size_t cout = w.cols();
    for (std::size_t u = 0; u < u_len; ++u) {
      const double* dout_row = dout.row(u);
      for (std::size_t co = 0; co < cout; ++co) dbias(0, co) += dout_row[co];
      const double* in_row = in.row(u);
      double* din_row = din.row(u);
      for (std::size_t ci = 0; ci < cin; ++ci) {
        const double* w_row = w.row(ci);
        double* dw_row = dw.row(ci);
        const double x = in_row[ci];
        double acc = 0.0;
        for (std::size_t co = 0; co < cout; ++co) {
          const double g = dout_row[co];
          acc += g * w_row[co];
          dw_row[co] += g * x;
        }
        din_row[ci] += acc;
      }
    }
  });
}

Tape::NodeId Tape::relu(NodeId x) {
  check_id(x);
  const Tensor& in = val(x);
  Tensor out(in.rows(), in.cols());
  const double* src = in.flat().data();
  double* dst = out.flat().data();
  for (std::size_t i = 0; i < in.size(); ++i)
    dst[i] = src[i] > 0.0 ? src[i] : 0.0;

  const NodeId out_id = nodes_.size();
  return push(std::move(out), [x, out_id](Tape& t) {
    const Tensor& in = t.val(x);
    const Tensor& dout = t.grad_buf(out_id);
    Tensor& din = t.grad_buf(x);
    const double* src = in.flat().data();
    const double* g = dout.flat().data();
    double* d = din.flat().data();
    for (std::size_t i = 0; i < in.size(); ++i) {
      if (src[i] > 0.0) d[i] += g[i];
    }
  });
}

Tape::NodeId Tape::gather_rows(NodeId table,
                               std::span<const std::int32_t> ids) {
  check_id(table);
  const Tensor& tab = val(table);
  for (std::size_t u = 0; u < ids.size(); ++u) {
    require(ids[u] >= 0 && static_cast<std::size_t>(ids[u]) < tab.rows(),
            "gather_rows: id " + std::to_string(ids[u]) +
                " out of vocabulary (V=" + std::to_string(tab.rows()) + ")");
  }
  Tensor out(ids.size(), tab.cols());
  for (std::size_t u = 0; u < ids.size(); ++u) {
    const double* src = tab.row(static_cast<std::size_t>(ids[u]));
    double* dst = out.row(u);
    for (std::size_t c = 0; c < tab.cols(); ++c) dst[c] = src[c];
  }

  const NodeId out_id = nodes_.size();
  std::vector<std::int32_t> ids_copy(ids.begin(), ids.end());
  return push(std::move(out),
              [table, ids = std::move(ids_copy), out_id](Tape& t) {
    const Tensor& dout = t.grad_buf(out_id);
    Tensor& dtab = t.grad_buf(table);
    for (std::size_t u = 0; u < ids.size(); ++u) {
      const double* g = dout.row(u);
      double* d = dtab.row(static_cast<std::size_t>(ids[u]));
      for (std::size_t c = 0; c < dout.cols(); ++c) d[c] += g[c];
    }
  });
}

Tape::NodeId Tape::concat_broadcast(NodeId unit_emb, NodeId broadcast,
                                    NodeId broadcast2) {
  check_id(unit_emb);
  check_id(broadcast);
  check_id(broadcast2);
  const Tensor& emb = val(unit_emb);
  const Tensor& s = val(broadcast);
  const Tensor& e = val(broadcast2);
  require(s.rows() == 1 && e.rows() == 1,
          "concat_broadcast: broadcast inputs must have one row");
  const std::size_t u_len = emb.rows();
  const std::size_t ec = emb.cols(), sc = s.cols(), xc = e.cols();
  Tensor out(u_len, ec + sc + xc);
  for (std::size_t u = 0; u < u_len; ++u) {
    double* dst = out.row(u);
    const double* a = emb.row(u);
    for (std::size_t c = 0; c < ec; ++c) dst[c] = a[c];
    const double* b = s.row(0);
    for (std::size_t c = 0; c < sc; ++c) dst[ec + c] = b[c];
    const double* d = e.row(0);
    for (std::size_t c = 0; c < xc; ++c) dst[ec + sc + c] = d[c];
  }

  const NodeId out_id = nodes_.size();
  return push(std::move(out),
              [unit_emb, broadcast, broadcast2, out_id](Tape& t) {
    const Tensor& dout = t.grad_buf(out_id);
    Tensor& demb = t.grad_buf(unit_emb);
    Tensor& ds = t.grad_buf(broadcast);
    Tensor& de = t.grad_buf(broadcast2);
    const std::size_t ec = demb.cols(), sc = ds.cols(), xc = de.cols();
    for (std::size_t u = 0; u < dout.rows(); ++u) {
      const double* g = dout.row(u);
      double* a = demb.row(u);
      for (std::size_t c = 0; c < ec; ++c) a[c] += g[c];
      // broadcast inputs: gradients sum over positions
      double* b = ds.row(0);
      for (std::size_t c = 0; c < sc; ++c) b[c] += g[ec + c];
      double* d = de.row(0);
      for (std::size_t c = 0; c < xc; ++c) d[c] += g[ec + sc + c];
    }
  });
}

Tape::NodeId Tape::affine_scalar(double x, NodeId weight, NodeId bias) {
  check_id(weight);
  check_id(bias);
  const Tensor& w = val(weight);
  const Tensor& b = val(bias);
  require(w.rows() == 1 && b.rows() == 1 && w.cols() == b.cols(),
          "affine_scalar: weight and bias must be equal-width single rows");
  Tensor out(1, w.cols());
  for (std::size_t c = 0; c < w.cols(); ++c) out(0, c) = x * w(0, c) + b(0, c);

  const NodeId out_id = nodes_.size();
  return push(std::move(out), [x, weight, bias, out_id](Tape& t) {
    const Tensor& dout = t.grad_buf(out_id);
    Tensor& dw = t.grad_buf(weight);
    Tensor& db = t.grad_buf(bias);
    for (std::size_t c = 0; c < dout.cols(); ++c) {
      dw(0, c) += x * dout(0, c);
      db(0, c) += dout(0, c);
    }
  });
}

Tape::NodeId Tape::column(NodeId x, std::size_t col) {
  check_id(x);
  const Tensor& in = val(x);
  require(col < in.cols(), "column: index out of range");
  Tensor out(in.rows(), 1);
  for (std::size_t u = 0; u < in.rows(); ++u) out(u, 0) = in(u, col);

  const NodeId out_id = nodes_.size();
  return push(std::move(out), [x, col, out_id](Tape& t) {
    const Tensor& dout = t.grad_buf(out_id);
    Tensor& din = t.grad_buf(x);
    for (std::size_t u = 0; u < dout.rows(); ++u) din(u, col) += dout(u, 0);
  });
}

Tape::NodeId Tape::sum(NodeId x) {
  check_id(x);
  const Tensor& in = val(x);
  double acc = 0.0;
  for (double v : in.flat()) acc += v;
  Tensor out(1, 1);
  out(0, 0) = acc;

  const NodeId out_id = nodes_.size();
  return push(std::move(out), [x, out_id](Tape& t) {
    const double g = t.grad_buf(out_id)(0, 0);
    Tensor& din = t.grad_buf(x);
    for (double& v : din.flat()) v += g;
  });
}

Tape::NodeId Tape::mse_loss(NodeId pred, std::span<const double> target) {
  check_id(pred);
  const Tensor& p = val(pred);
  require(p.cols() == 1, "mse_loss: prediction must be a column");
  require(p.rows() == target.size() && !target.empty(),
          "mse_loss: prediction/target length mismatch or empty");
  double acc = 0.0;
  for (std::size_t u = 0; u < target.size(); ++u) {
    const double d = p(u, 0) - target[u];
    acc += d * d;
  }
  Tensor out(1, 1);
  out(0, 0) = acc / static_cast<double>(target.size());

  const NodeId out_id = nodes_.size();
  std::vector<double> tgt(target.begin(), target.end());
  return push(std::move(out), [pred, t_ = std::move(tgt), out_id](Tape& t) {
    const double g = t.grad_buf(out_id)(0, 0);
    const Tensor& p = t.val(pred);
    Tensor& dp = t.grad_buf(pred);
    const double inv_n = 1.0 / static_cast<double>(t_.size());
    for (std::size_t u = 0; u < t_.size(); ++u) {
      dp(u, 0) += g * 2.0 * (p(u, 0) - t_[u]) * inv_n;
    }
  });
}

Tape::NodeId Tape::l1_loss(NodeId pred, std::span<const double> target) {
  check_id(pred);
  const Tensor& p = val(pred);
  require(p.cols() == 1, "l1_loss: prediction must be a column");
  require(p.rows() == target.size() && !target.empty(),
          "l1_loss: prediction/target length mismatch or empty");
  double acc = 0.0;
  for (std::size_t u = 0; u < target.size(); ++u)
    acc += std::abs(p(u, 0) - target[u]);
  Tensor out(1, 1);
  out(0, 0) = acc / static_cast<double>(target.size());

  const NodeId out_id = nodes_.size();
  std::vector<double> tgt(target.begin(), target.end());
  return push(std::move(out), [pred, t_ = std::move(tgt), out_id](Tape& t) {
    const double g = t.grad_buf(out_id)(0, 0);
    const Tensor& p = t.val(pred);
    Tensor& dp = t.grad_buf(pred);
    const double inv_n = 1.0 / static_cast<double>(t_.size());
    for (std::size_t u = 0; u < t_.size(); ++u) {
      const double d = p(u, 0) - t_[u];
      // subgradient 0 at the kink
      const double s = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
      dp(u, 0) += g * s * inv_n;
    }
  });
}

Tape::NodeId Tape::nll_loss(NodeId mean, NodeId log_sigma,
                            std::span<const double> target) {
  check_id(mean);
  check_id(log_sigma);
  const Tensor& m = val(mean);
  const Tensor& ls = val(log_sigma);
  require(m.cols() == 1 && ls.cols() == 1, "nll_loss: inputs must be columns");
  require(m.rows() == target.size() && ls.rows() == target.size() &&
              !target.empty(),
          "nll_loss: length mismatch or empty");
  double acc = 0.0;
  for (std::size_t u = 0; u < target.size(); ++u) {
    const double raw = std::exp(ls(u, 0));
    if (!std::isfinite(raw)) {
      throw InvalidArgumentError("nll_loss: non-finite sigma at position " +
                                 std::to_string(u));
    }
    const double sigma = std::clamp(raw, kSigmaFloor, kSigmaCeil);
    const double r = target[u] - m(u, 0);
    acc += 0.5 * std::log(kTwoPi * sigma * sigma) +
           r * r / (2.0 * sigma * sigma);
  }
  Tensor out(1, 1);
  out(0, 0) = acc / static_cast<double>(target.size());

  const NodeId out_id = nodes_.size();
  std::vector<double> tgt(target.begin(), target.end());
  return push(std::move(out),
              [mean, log_sigma, t_ = std::move(tgt), out_id](Tape& t) {
    const double g = t.grad_buf(out_id)(0, 0);
    const Tensor& m = t.val(mean);
    const Tensor& ls = t.val(log_sigma);
    Tensor& dm = t.grad_buf(mean);
    Tensor& dls = t.grad_buf(log_sigma);
    const double inv_n = 1.0 / static_cast<double>(t_.size());
    for (std::size_t u = 0; u < t_.size(); ++u) {
      const double raw = std::exp(ls(u, 0));
      const double sigma = std::clamp(raw, kSigmaFloor, kSigmaCeil);
      const double r = t_[u] - m(u, 0);
      dm(u, 0) += g * (-r / (sigma * sigma)) * inv_n;
      // d/d(log sigma) = 1 - r^2/sigma^2, zero where the clamp is active
      if (raw > kSigmaFloor && raw < kSigmaCeil) {
        dls(u, 0) += g * (1.0 - r * r / (sigma * sigma)) * inv_n;
      }
    }
  });
}

void Tape::backward(NodeId loss, ParamStore* sink, double scale) {
  if (nodes_.empty()) {
    throw InvalidArgumentError("tape: backward before any forward op");
  }
  check_id(loss);
  const Tensor& l = val(loss);
  require(l.rows() == 1 && l.cols() == 1, "tape: loss node must be 1x1");

  for (auto& node : nodes_) {
    node.grad = Tensor(node.value.rows(), node.value.cols(), 0.0);
  }
  nodes_[loss].grad(0, 0) = scale;

  for (std::size_t i = nodes_.size(); i-- > 0;) {
    if (nodes_[i].backprop) nodes_[i].backprop(*this);
  }

  if (sink != nullptr) {
    for (const auto& node : nodes_) {
      if (!node.param_name.empty()) {
        sink->grad(node.param_name).add(node.grad);
      }
    }
  }
}

}  // namespace emodur
