// src/encoder/tiny_encoder.cc

// Copyright 2026  The pronscore Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "pronscore/encoder/tiny_encoder.h"

#include <cmath>

#include <json.hpp>

#include "pronscore/common/error.h"
#include "pronscore/common/rng.h"
#include "pronscore/nn/serialize.h"

using nlohmann::json;

namespace pronscore {

namespace {

nn::Matrix rand_matrix(int rows, int cols, double scl, Rng& rng) {
  nn::Matrix m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = scl * rng.normal();
  return m;
}

// Columns shifted one frame toward the past / future, zero padded.
nn::Tape::Var shift_cols(nn::Tape& tape, nn::Tape::Var h, int direction) {
  const auto& v = tape.value(h);
  const int T = static_cast<int>(v.cols());
  nn::Tape::Var zero = tape.input(nn::Matrix::Zero(v.rows(), 1));
  if (T == 1) return zero;
  if (direction < 0)  // h_{t-1}
    return tape.concat_cols({zero, tape.cols(h, 0, T - 1)});
  return tape.concat_cols({tape.cols(h, 1, T - 1), zero});  // h_{t+1}
}

}  // namespace

TinyEncoder::TinyEncoder(const EncoderSpec& spec, uint64_t seed) : spec_(spec) {
  spec_.validate();
  init_params(seed);
}

void TinyEncoder::init_params(uint64_t seed) {
  Rng rng(seed);
  const FrameLayout fl = frame_layout(spec_);
  const int D = spec_.hidden_dim;
  const int C = spec_.conv_dim;
  fe_w_ = nn::Parameter("feature_encoder.w",
                        rand_matrix(C, fl.window, 1.0 / std::sqrt((double)fl.window), rng));
  fe_b_ = nn::Parameter("feature_encoder.b", nn::Matrix::Zero(C, 1));
  fp_w_ = nn::Parameter("feature_projection.w",
                        rand_matrix(D, C, 1.0 / std::sqrt((double)C), rng));
  fp_b_ = nn::Parameter("feature_projection.b", nn::Matrix::Zero(D, 1));
  layers_.clear();
  const double scl = 0.5 / std::sqrt(static_cast<double>(D));
  for (int l = 0; l < spec_.num_transformer_layers; ++l) {
    Layer layer;
    const std::string prefix = "layer_" + std::to_string(l);
    layer.w_prev = nn::Parameter(prefix + ".w_prev", rand_matrix(D, D, scl, rng));
    layer.w_cur = nn::Parameter(prefix + ".w_cur", rand_matrix(D, D, scl, rng));
    layer.w_next = nn::Parameter(prefix + ".w_next", rand_matrix(D, D, scl, rng));
    layer.b = nn::Parameter(prefix + ".b", nn::Matrix::Zero(D, 1));
    layers_.push_back(std::move(layer));
  }
}

void TinyEncoder::attach_ctc_head(int vocab_size, uint64_t seed) {
  if (vocab_size < 2)
    throw ValidationError("ctc head needs a vocabulary of at least 2 tokens");
  Rng rng(seed ^ 0xC7C7C7C7ull);
  const int D = spec_.hidden_dim;
  const double scl = 1.0 / std::sqrt(static_cast<double>(3 * D));
  head_prev_ = nn::Parameter("ctc_head.w_prev", rand_matrix(vocab_size, D, scl, rng));
  head_cur_ = nn::Parameter("ctc_head.w_cur", rand_matrix(vocab_size, D, scl, rng));
  head_next_ = nn::Parameter("ctc_head.w_next", rand_matrix(vocab_size, D, scl, rng));
  head_b_ = nn::Parameter("ctc_head.b", nn::Matrix::Zero(vocab_size, 1));
  vocab_size_ = vocab_size;
}

TinyEncoder::Forward TinyEncoder::forward(nn::Tape& tape,
                                          const Matrix& windows,
                                          bool with_head) const {
  Forward fwd;
  nn::Tape::Var x = tape.input(windows);
  nn::Tape::Var conv = tape.tanh(
      tape.add_colvec(tape.matmul(tape.param(fe_w_), x), tape.param(fe_b_)));
  fwd.conv = conv;
  nn::Tape::Var h = tape.tanh(tape.add_colvec(
      tape.matmul(tape.param(fp_w_), conv), tape.param(fp_b_)));
  for (auto& layer : layers_) {
    nn::Tape::Var prev = shift_cols(tape, h, -1);
    nn::Tape::Var next = shift_cols(tape, h, +1);
    nn::Tape::Var mix = tape.add_colvec(
        tape.add(tape.add(tape.matmul(tape.param(layer.w_prev), prev),
                          tape.matmul(tape.param(layer.w_cur), h)),
                 tape.matmul(tape.param(layer.w_next), next)),
        tape.param(layer.b));
    h = tape.add(h, tape.tanh(mix));
    fwd.layers.push_back(h);
  }
  if (with_head) {
    if (!has_ctc_head())
      throw FatalError("forward(with_head) requires an attached ctc head");
    nn::Tape::Var prev = shift_cols(tape, h, -1);
    nn::Tape::Var next = shift_cols(tape, h, +1);
    fwd.logits = tape.add_colvec(
        tape.add(tape.add(tape.matmul(tape.param(head_prev_), prev),
                          tape.matmul(tape.param(head_cur_), h)),
                 tape.matmul(tape.param(head_next_), next)),
        tape.param(head_b_));
  }
  return fwd;
}

LayerStack TinyEncoder::encode(const std::vector<double>& audio) const {
  const Matrix windows = frame_signal(audio, frame_layout(spec_));
  nn::Tape tape;
  Forward fwd = forward(tape, windows, false);
  LayerStack stack;
  stack.conv_features = tape.value(fwd.conv).transpose();
  for (auto layer : fwd.layers)
    stack.layers.push_back(tape.value(layer).transpose());
  stack.validate();
  return stack;
}

Matrix TinyEncoder::logits(const std::vector<double>& audio) const {
  const Matrix windows = frame_signal(audio, frame_layout(spec_));
  nn::Tape tape;
  Forward fwd = forward(tape, windows, true);
  return tape.value(fwd.logits);
}

std::vector<nn::Parameter*> TinyEncoder::mutable_parameters() {
  std::vector<nn::Parameter*> out = {&fe_w_, &fe_b_, &fp_w_, &fp_b_};
  for (auto& l : layers_) {
    out.push_back(&l.w_prev);
    out.push_back(&l.w_cur);
    out.push_back(&l.w_next);
    out.push_back(&l.b);
  }
  if (has_ctc_head()) {
    out.push_back(&head_prev_);
    out.push_back(&head_cur_);
    out.push_back(&head_next_);
    out.push_back(&head_b_);
  }
  return out;
}

std::vector<nn::Parameter*> TinyEncoder::trainable_parameters(
    const std::set<std::string>& frozen_components) {
  std::vector<nn::Parameter*> out;
  for (nn::Parameter* p : mutable_parameters()) {
    const std::string component = p->name.substr(0, p->name.find('.'));
    bool frozen = frozen_components.count(component) > 0;
    // "transformer" freezes every context layer at once.
    if (component.rfind("layer_", 0) == 0 &&
        frozen_components.count("transformer"))
      frozen = true;
    if (!frozen) out.push_back(p);
  }
  return out;
}

std::vector<const nn::Parameter*> TinyEncoder::all_parameters() const {
  auto* self = const_cast<TinyEncoder*>(this);
  std::vector<const nn::Parameter*> out;
  for (nn::Parameter* p : self->mutable_parameters()) out.push_back(p);
  return out;
}

uint64_t TinyEncoder::checkpoint_hash() const {
  return nn::parameters_hash(all_parameters());
}

std::unique_ptr<EncoderBackend> TinyEncoder::clone() const {
  auto copy = std::unique_ptr<TinyEncoder>(new TinyEncoder());
  *copy = *this;
  return copy;
}

void TinyEncoder::save(const std::string& path,
                       const std::string& meta_json) const {
  nn::TensorFile file;
  json meta;
  if (!meta_json.empty()) meta = json::parse(meta_json);
  meta["encoder"] = {{"family", spec_.family == EncoderFamily::kWav2vec2Style
                                    ? "wav2vec2_style"
                                    : "hubert_style"},
                     {"variant", spec_.variant},
                     {"num_transformer_layers", spec_.num_transformer_layers},
                     {"hidden_dim", spec_.hidden_dim},
                     {"conv_dim", spec_.conv_dim},
                     {"frame_stride", spec_.frame_stride},
                     {"vocab_size", vocab_size_}};
  file.meta_json = meta.dump();
  for (const nn::Parameter* p : all_parameters())
    file.tensors.emplace_back(p->name, p->value);
  nn::write_tensor_file(path, file);
}

std::unique_ptr<TinyEncoder> TinyEncoder::load(const std::string& path) {
  nn::TensorFile file = nn::read_tensor_file(path);
  json meta = json::parse(file.meta_json);
  const json& e = meta.at("encoder");
  EncoderSpec spec;
  spec.family = e.at("family").get<std::string>() == "hubert_style"
                    ? EncoderFamily::kHubertStyle
                    : EncoderFamily::kWav2vec2Style;
  spec.variant = e.at("variant").get<std::string>();
  spec.num_transformer_layers = e.at("num_transformer_layers").get<int>();
  spec.hidden_dim = e.at("hidden_dim").get<int>();
  spec.conv_dim = e.at("conv_dim").get<int>();
  spec.frame_stride = e.at("frame_stride").get<double>();

  auto enc = std::unique_ptr<TinyEncoder>(new TinyEncoder());
  enc->spec_ = spec;
  enc->init_params(0);
  const int vocab = e.at("vocab_size").get<int>();
  if (vocab > 0) enc->attach_ctc_head(vocab, 0);

  std::map<std::string, Matrix> by_name(file.tensors.begin(),
                                        file.tensors.end());
  for (nn::Parameter* p : enc->mutable_parameters()) {
    auto it = by_name.find(p->name);
    if (it == by_name.end())
      throw ValidationError("checkpoint " + path + " lacks tensor " + p->name);
    if (it->second.rows() != p->value.rows() ||
        it->second.cols() != p->value.cols())
      throw ValidationError("checkpoint " + path + " tensor " + p->name +
                            " has wrong shape");
    p->value = it->second;
  }
  return enc;
}

std::string TinyEncoder::load_meta(const std::string& path) {
  return nn::read_tensor_file(path).meta_json;
}

}  // namespace pronscore
