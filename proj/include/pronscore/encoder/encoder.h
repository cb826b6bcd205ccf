// include/pronscore/encoder/encoder.h

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

#ifndef PRONSCORE_ENCODER_ENCODER_H_
#define PRONSCORE_ENCODER_ENCODER_H_

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pronscore {

using Matrix = Eigen::MatrixXd;

enum class EncoderFamily { kWav2vec2Style, kHubertStyle };

// Architecture card for a self-supervised acoustic encoder: a convolutional
// front end followed by a stack of context layers whose hidden states are
// all exposed.
struct EncoderSpec {
  EncoderFamily family = EncoderFamily::kWav2vec2Style;
  std::string variant;          // e.g. "base-960h", "large-960h", "tiny"
  int num_transformer_layers = 0;  // L
  int hidden_dim = 0;              // D
  int conv_dim = 0;                // width of the convolutional front end
  double frame_stride = 0.02;      // seconds per output frame

  // Known variants fill L and D: "base-*" is 12 x 768, "large-*"/"*-robust"
  // is 24 x 1024. Unknown variants must set the fields explicitly.
  static EncoderSpec preset(EncoderFamily family, const std::string& variant);

  std::string canonical_string() const;  // stable identity for cache keys
  void validate() const;
};

// Per-utterance hidden states: convolutional front-end output plus every
// context layer, frames as rows.
struct LayerStack {
  std::string utterance_id;
  Matrix conv_features;          // T x conv_dim
  std::vector<Matrix> layers;    // L matrices, T x D, layer 1 first

  int frames() const { return static_cast<int>(conv_features.rows()); }
  int num_layers() const { return static_cast<int>(layers.size()); }
  void validate() const;
};

enum class LayerSelectionMode { kSingleLayer, kUniformAverage, kWeightedAverage };

// How to reduce a LayerStack to one T x D matrix. single_layer(0) selects
// the convolutional front end; indices 1..L select context layers. The
// uniform and weighted averages run over the L context layers only.
struct LayerSelection {
  LayerSelectionMode mode = LayerSelectionMode::kUniformAverage;
  int layer_index = -1;              // single_layer only, in [0, L]
  std::vector<double> weights;       // weighted_average only, sums to 1
  bool learnable = false;            // weighted_average may be trained

  static LayerSelection single_layer(int index);
  static LayerSelection uniform_average();
  static LayerSelection weighted_average(std::vector<double> w,
                                         bool learnable = false);

  void validate(int num_layers) const;
  std::string canonical_string() const;
  static LayerSelection parse(const std::string& canonical);
};

// Reduces the stack according to the selection. Result is T x D (or
// T x conv_dim for single_layer(0)).
Matrix aggregate(const LayerStack& stack, const LayerSelection& selection);

// Narrow interface over a concrete encoder: load once, encode waveforms to
// per-layer hidden states. One handle is not required to be thread-safe;
// concurrent extraction gives each worker its own clone().
class EncoderBackend {
 public:
  virtual ~EncoderBackend() = default;
  virtual const EncoderSpec& spec() const = 0;
  // audio: 16 kHz mono samples. Throws TooShortAudioError when shorter than
  // one frame.
  virtual LayerStack encode(const std::vector<double>& audio) const = 0;
  // Identity of the loaded weights; part of every feature-cache key.
  virtual uint64_t checkpoint_hash() const = 0;
  virtual std::unique_ptr<EncoderBackend> clone() const = 0;
};

// Deterministic synthetic backend. Frame features mix waveform statistics
// with a frame-position channel, then pass through fixed random residual
// maps per layer. Inference-only; used for pipeline tests and as a cheap
// stand-in where no trained checkpoint is available.
std::unique_ptr<EncoderBackend> make_stub_backend(const EncoderSpec& spec,
                                                  uint64_t seed);

}  // namespace pronscore

#endif  // PRONSCORE_ENCODER_ENCODER_H_
