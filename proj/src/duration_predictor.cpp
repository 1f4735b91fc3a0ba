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

#include "emodur/duration_predictor.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <random>

#include "json.hpp"

#include "emodur/errors.hpp"

namespace emodur {

namespace {

using nlohmann::json;

std::atomic<std::uint64_t> g_reverse_calls{0};
thread_local int t_training_depth = 0;

void check_dedup_input(std::span<const UnitId> units, std::size_t vocabulary) {
  for (std::size_t u = 0; u < units.size(); ++u) {
    if (units[u] < 0 || static_cast<std::size_t>(units[u]) >= vocabulary) {
      throw InvalidArgumentError(
          "unit id " + std::to_string(units[u]) + " out of vocabulary (V=" +
          std::to_string(vocabulary) + ")");
    }
    if (u > 0 && units[u] == units[u - 1]) {
      throw InvalidArgumentError(
          "predictor input must be de-duplicated: equal consecutive units at "
          "index " +
          std::to_string(u));
    }
  }
}

}  // namespace

std::string to_string(LossVariant v) {
  switch (v) {
    case LossVariant::kMse:
      return "mse";
    case LossVariant::kL1:
      return "l1";
    case LossVariant::kUncert:
      return "uncert";
  }
  throw InvalidArgumentError("unknown loss variant");
}

LossVariant variant_from_string(const std::string& s) {
  if (s == "mse") return LossVariant::kMse;
  if (s == "l1") return LossVariant::kL1;
  if (s == "uncert") return LossVariant::kUncert;
  throw InvalidArgumentError("unknown loss variant: '" + s +
                             "' (expected mse, l1 or uncert)");
}

std::string to_string(ClampMode m) {
  switch (m) {
    case ClampMode::kPaperCorrected:
      return "paper_corrected";
    case ClampMode::kPaperLiteral:
      return "paper_literal";
  }
  throw InvalidArgumentError("unknown clamp mode");
}

ClampMode clamp_mode_from_string(const std::string& s) {
  if (s == "paper_corrected") return ClampMode::kPaperCorrected;
  if (s == "paper_literal") return ClampMode::kPaperLiteral;
  throw InvalidArgumentError(
      "unknown clamp mode: '" + s +
      "' (expected paper_corrected or paper_literal)");
}

void PredictorConfig::validate() const {
  if (vocabulary == 0) {
    throw InvalidArgumentError("predictor: vocabulary must be positive");
  }
  if (unit_embed_dim == 0 || hidden_dim == 0) {
    throw InvalidArgumentError("predictor: channel widths must be positive");
  }
  if (kernel_size == 0 || kernel_size % 2 == 0) {
    throw InvalidArgumentError("predictor: kernel size must be odd, got " +
                               std::to_string(kernel_size));
  }
}

DurationModel::DurationModel(const PredictorConfig& config, LossVariant variant,
                             std::uint64_t init_seed)
    : config_(config), variant_(variant), init_seed_(init_seed) {
  config_.validate();
  init_params(init_seed);
}

void DurationModel::init_params(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  auto fill_normal = [&](Tensor& t, double scale) {
    for (double& v : t.flat()) v = scale * normal(rng);
  };

  const std::size_t v = config_.vocabulary;
  const std::size_t e = config_.unit_embed_dim;
  const std::size_t h = config_.hidden_dim;
  const std::size_t k = config_.kernel_size;
  const std::size_t cat_dim = e + kSpeakerDim + kEmotionDim;
  const std::size_t head_cols = head_width();

  // fixed draw order keeps init reproducible
  Tensor table(v, e);
  fill_normal(table, 0.1);
  Tensor emo_w(1, kEmotionDim);
  fill_normal(emo_w, 0.1);
  Tensor emo_b(1, kEmotionDim);
  Tensor conv1_w(k * cat_dim, h);
  fill_normal(conv1_w, std::sqrt(2.0 / static_cast<double>(k * cat_dim)));
  Tensor conv1_b(1, h);
  Tensor conv2_w(k * h, h);
  fill_normal(conv2_w, std::sqrt(2.0 / static_cast<double>(k * h)));
  Tensor conv2_b(1, h);
  Tensor head_w(h, head_cols);
  fill_normal(head_w, std::sqrt(1.0 / static_cast<double>(h)));
  Tensor head_b(1, head_cols);

  params_.add("conv1_bias", std::move(conv1_b));
  params_.add("conv1_weight", std::move(conv1_w));
  params_.add("conv2_bias", std::move(conv2_b));
  params_.add("conv2_weight", std::move(conv2_w));
  params_.add("emotion_bias", std::move(emo_b));
  params_.add("emotion_weight", std::move(emo_w));
  params_.add("head_bias", std::move(head_b));
  params_.add("head_weight", std::move(head_w));
  params_.add("unit_table", std::move(table));
}

DurationModel::ForwardNodes DurationModel::forward(
    Tape& tape, std::span<const UnitId> units, const SpeakerVector& speaker,
    const ArousalLabel& label) const {
  if (units.empty()) {
    throw InvalidArgumentError("predictor: empty unit sequence");
  }
  check_dedup_input(units, config_.vocabulary);

  const auto table = tape.param("unit_table");
  const auto unit_emb = embed_units_node(tape, units, table);
  const auto z_e = embed_emotion_node(tape, label, tape.param("emotion_weight"),
                                      tape.param("emotion_bias"));
  const auto z_s = tape.constant(
      Tensor::from_data(1, kSpeakerDim, speaker.values()));
  const auto cat = broadcast_concat_node(tape, unit_emb, z_s, z_e);

  const auto c1 = tape.conv1d(cat, tape.param("conv1_weight"),
                              tape.param("conv1_bias"), config_.kernel_size);
  const auto r1 = tape.relu(c1);
  const auto c2 = tape.conv1d(r1, tape.param("conv2_weight"),
                              tape.param("conv2_bias"), config_.kernel_size);
  const auto r2 = tape.relu(c2);
  const auto head = tape.linear(r2, tape.param("head_weight"),
                                tape.param("head_bias"));

  ForwardNodes out{tape.column(head, 0), std::nullopt};
  if (variant_ == LossVariant::kUncert) {
    out.log_sigma = tape.column(head, 1);
  }
  return out;
}

DurationPrediction predict(const DurationModel& model,
                           std::span<const UnitId> units,
                           const SpeakerVector& speaker,
                           const ArousalLabel& label) {
  DurationPrediction pred;
  if (units.empty()) return pred;

  Tape tape(&model.params());
  const auto nodes = model.forward(tape, units, speaker, label);
  const Tensor& mean = tape.value(nodes.log_duration);
  pred.log_durations.resize(mean.rows());
  for (std::size_t u = 0; u < mean.rows(); ++u) {
    pred.log_durations[u] = mean(u, 0);
  }
  if (nodes.log_sigma) {
    const Tensor& ls = tape.value(*nodes.log_sigma);
    pred.log_sigma.resize(ls.rows());
    for (std::size_t u = 0; u < ls.rows(); ++u) pred.log_sigma[u] = ls(u, 0);
  }
  return pred;
}

TrainingPhaseGuard::TrainingPhaseGuard() { ++t_training_depth; }
TrainingPhaseGuard::~TrainingPhaseGuard() { --t_training_depth; }
bool TrainingPhaseGuard::active() { return t_training_depth > 0; }

std::uint64_t reverse_durations_call_count() { return g_reverse_calls.load(); }

std::vector<std::int64_t> reverse_durations(const DurationPrediction& pred,
                                            ClampMode mode) {
  if (TrainingPhaseGuard::active()) {
    throw ContractViolationError(
        "reverse_durations called during a training phase; predicted "
        "durations are inference-only");
  }
  g_reverse_calls.fetch_add(1);

  std::vector<std::int64_t> out;
  out.reserve(pred.size());
  for (double y : pred.log_durations) {
    if (!std::isfinite(y)) {
      throw InvalidArgumentError("reverse_durations: non-finite prediction");
    }
    switch (mode) {
      case ClampMode::kPaperCorrected:
        out.push_back(std::max<std::int64_t>(
            1, static_cast<std::int64_t>(std::llround(std::exp(y)))));
        break;
      case ClampMode::kPaperLiteral: {
        // as printed: min(1, e^{y+1}), then rounded up to at least one frame
        const double v = std::min(1.0, std::exp(y + 1.0));
        out.push_back(
            std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(v))));
        break;
      }
    }
  }
  return out;
}

UnitSequence apply_durations(std::span<const UnitId> units,
                             std::span<const std::int64_t> durations,
                             double frame_rate_hz) {
  if (units.size() != durations.size()) {
    throw InvalidArgumentError(
        "apply_durations: units length " + std::to_string(units.size()) +
        " != durations length " + std::to_string(durations.size()));
  }
  RunLengthSequence rls;
  rls.units.assign(units.begin(), units.end());
  rls.durations.assign(durations.begin(), durations.end());
  return expand(rls, frame_rate_hz);
}

std::string checkpoint_to_json(const DurationModel& model) {
  json doc;
  doc["format_version"] = 1;
  doc["variant"] = to_string(model.variant());
  doc["hyperparams"] = {
      {"vocabulary", model.config().vocabulary},
      {"unit_embed_dim", model.config().unit_embed_dim},
      {"hidden_dim", model.config().hidden_dim},
      {"kernel_size", model.config().kernel_size},
      {"init_seed", model.init_seed()},
  };
  json params = json::object();
  for (const auto& name : model.params().names()) {
    const Tensor& t = model.params().value(name);
    params[name] = {
        {"shape", {t.rows(), t.cols()}},
        {"data", std::vector<double>(t.flat().begin(), t.flat().end())},
    };
  }
  doc["parameters"] = std::move(params);
  return doc.dump();
}

DurationModel checkpoint_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("checkpoint: ") + e.what());
  }
  try {
    if (doc.at("format_version").get<int>() != 1) {
      throw ParseError("checkpoint: unsupported format_version");
    }
    const auto& hp = doc.at("hyperparams");
    PredictorConfig cfg;
    cfg.vocabulary = hp.at("vocabulary").get<std::size_t>();
    cfg.unit_embed_dim = hp.at("unit_embed_dim").get<std::size_t>();
    cfg.hidden_dim = hp.at("hidden_dim").get<std::size_t>();
    cfg.kernel_size = hp.at("kernel_size").get<std::size_t>();
    const auto variant = variant_from_string(doc.at("variant").get<std::string>());
    const auto seed = hp.at("init_seed").get<std::uint64_t>();

    DurationModel model(cfg, variant, seed);
    const auto& params = doc.at("parameters");
    for (const auto& name : model.params().names()) {
      if (!params.contains(name)) {
        throw ParseError("checkpoint: missing parameter " + name);
      }
      const auto& p = params.at(name);
      const auto shape = p.at("shape").get<std::vector<std::size_t>>();
      Tensor& dst = model.params().value(name);
      if (shape.size() != 2 || shape[0] != dst.rows() || shape[1] != dst.cols()) {
        throw ParseError("checkpoint: parameter " + name +
                         " has a shape inconsistent with the hyperparams");
      }
      const auto data = p.at("data").get<std::vector<double>>();
      if (data.size() != dst.size()) {
        throw ParseError("checkpoint: parameter " + name + " has " +
                         std::to_string(data.size()) + " values, expected " +
                         std::to_string(dst.size()));
      }
      std::copy(data.begin(), data.end(), dst.flat().begin());
      if (!dst.all_finite()) {
        throw ParseError("checkpoint: parameter " + name +
                         " has non-finite entries");
      }
    }
    if (params.size() != model.params().names().size()) {
      throw ParseError("checkpoint: unexpected extra parameters");
    }
    return model;
  } catch (const json::exception& e) {
    throw ParseError(std::string("checkpoint: ") + e.what());
  }
}

void save_checkpoint(const DurationModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open checkpoint for writing: " + path);
  }
  out << checkpoint_to_json(model) << '\n';
  if (!out.good()) {
    throw IoError("failed writing checkpoint: " + path);
  }
}

DurationModel load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open checkpoint: " + path);
  }
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return checkpoint_from_json(text);
}

}  // namespace emodur
