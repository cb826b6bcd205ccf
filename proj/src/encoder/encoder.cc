// src/encoder/encoder.cc

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

#include "pronscore/encoder/encoder.h"

#include <cmath>
#include <sstream>

#include "pronscore/common/error.h"

namespace pronscore {

EncoderSpec EncoderSpec::preset(EncoderFamily family,
                                const std::string& variant) {
  EncoderSpec spec;
  spec.family = family;
  spec.variant = variant;
  spec.frame_stride = 0.02;
  if (variant.find("base") != std::string::npos) {
    spec.num_transformer_layers = 12;
    spec.hidden_dim = 768;
    spec.conv_dim = 512;
  } else if (variant.find("large") != std::string::npos ||
             variant.find("robust") != std::string::npos) {
    spec.num_transformer_layers = 24;
    spec.hidden_dim = 1024;
    spec.conv_dim = 512;
  }
  return spec;
}

std::string EncoderSpec::canonical_string() const {
  std::ostringstream os;
  os << (family == EncoderFamily::kWav2vec2Style ? "wav2vec2" : "hubert")
     << "/" << variant << "/L" << num_transformer_layers << "/D" << hidden_dim
     << "/C" << conv_dim << "/s" << frame_stride;
  return os.str();
}

void EncoderSpec::validate() const {
  if (num_transformer_layers < 1)
    throw ValidationError("encoder spec: num_transformer_layers must be >= 1");
  if (hidden_dim < 1)
    throw ValidationError("encoder spec: hidden_dim must be >= 1");
  if (conv_dim < 1)
    throw ValidationError("encoder spec: conv_dim must be >= 1");
  if (frame_stride <= 0.0)
    throw ValidationError("encoder spec: frame_stride must be positive");
}

void LayerStack::validate() const {
  if (frames() < 1)
    throw ValidationError("layer stack for " + utterance_id +
                          " has no frames");
  if (layers.empty())
    throw ValidationError("layer stack for " + utterance_id +
                          " has no context layers");
  const auto T = conv_features.rows();
  const auto D = layers.front().cols();
  for (const auto& m : layers)
    if (m.rows() != T || m.cols() != D)
      throw ValidationError("layer stack for " + utterance_id +
                            " has inconsistent layer shapes");
}

LayerSelection LayerSelection::single_layer(int index) {
  LayerSelection s;
  s.mode = LayerSelectionMode::kSingleLayer;
  s.layer_index = index;
  return s;
}

LayerSelection LayerSelection::uniform_average() {
  LayerSelection s;
  s.mode = LayerSelectionMode::kUniformAverage;
  return s;
}

LayerSelection LayerSelection::weighted_average(std::vector<double> w,
                                                bool learnable) {
  LayerSelection s;
  s.mode = LayerSelectionMode::kWeightedAverage;
  s.weights = std::move(w);
  s.learnable = learnable;
  return s;
}

void LayerSelection::validate(int num_layers) const {
  switch (mode) {
    case LayerSelectionMode::kSingleLayer:
      if (layer_index < 0 || layer_index > num_layers)
        throw ValidationError("layer index " + std::to_string(layer_index) +
                              " out of range for L=" +
                              std::to_string(num_layers));
      break;
    case LayerSelectionMode::kUniformAverage:
      break;
    case LayerSelectionMode::kWeightedAverage: {
      if (static_cast<int>(weights.size()) != num_layers)
        throw ValidationError("expected " + std::to_string(num_layers) +
                              " layer weights, got " +
                              std::to_string(weights.size()));
      double sum = 0.0;
      for (double w : weights) {
        if (w < 0.0) throw ValidationError("layer weights must be >= 0");
        sum += w;
      }
      if (std::abs(sum - 1.0) > 1e-9)
        throw ValidationError("layer weights must sum to 1 (got " +
                              std::to_string(sum) + ")");
      break;
    }
  }
}

std::string LayerSelection::canonical_string() const {
  std::ostringstream os;
  switch (mode) {
    case LayerSelectionMode::kSingleLayer:
      os << "single:" << layer_index;
      break;
    case LayerSelectionMode::kUniformAverage:
      os << "uniform_average";
      break;
    case LayerSelectionMode::kWeightedAverage:
      os << (learnable ? "learned_weighted:" : "weighted:");
      for (size_t i = 0; i < weights.size(); ++i)
        os << (i ? "," : "") << weights[i];
      break;
  }
  return os.str();
}

LayerSelection LayerSelection::parse(const std::string& canonical) {
  if (canonical == "uniform_average") return uniform_average();
  if (canonical.rfind("single:", 0) == 0)
    return single_layer(std::stoi(canonical.substr(7)));
  const bool learn = canonical.rfind("learned_weighted:", 0) == 0;
  if (learn || canonical.rfind("weighted:", 0) == 0) {
    std::vector<double> w;
    std::stringstream ss(canonical.substr(canonical.find(':') + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) w.push_back(std::stod(tok));
    return weighted_average(std::move(w), learn);
  }
  throw ValidationError("cannot parse layer selection: " + canonical);
}

Matrix aggregate(const LayerStack& stack, const LayerSelection& selection) {
  selection.validate(stack.num_layers());
  switch (selection.mode) {
    case LayerSelectionMode::kSingleLayer:
      return selection.layer_index == 0
                 ? stack.conv_features
                 : stack.layers[selection.layer_index - 1];
    case LayerSelectionMode::kUniformAverage: {
      Matrix out = stack.layers[0];
      for (int l = 1; l < stack.num_layers(); ++l) out += stack.layers[l];
      return out / static_cast<double>(stack.num_layers());
    }
    case LayerSelectionMode::kWeightedAverage: {
      Matrix out = selection.weights[0] * stack.layers[0];
      for (int l = 1; l < stack.num_layers(); ++l)
        out += selection.weights[l] * stack.layers[l];
      return out;
    }
  }
  throw FatalError("unreachable layer selection mode");
}

}  // namespace pronscore
