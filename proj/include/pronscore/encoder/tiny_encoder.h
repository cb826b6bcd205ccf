// include/pronscore/encoder/tiny_encoder.h

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

#ifndef PRONSCORE_ENCODER_TINY_ENCODER_H_
#define PRONSCORE_ENCODER_TINY_ENCODER_H_

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "pronscore/encoder/encoder.h"
#include "pronscore/encoder/frames.h"
#include "pronscore/nn/tape.h"

namespace pronscore {

// Desk-scale trainable encoder with the same shape contract as the large
// published models: a strided convolutional front end over raw samples,
// a projection, and L residual context layers with kernel-3 temporal
// mixing, all of whose hidden states are exposed. A kernel-3 convolutional
// head over the final hidden states produces per-frame letter logits for
// CTC training. Components are addressable by name for freezing:
// "feature_encoder", "feature_projection", "layer_<i>", "ctc_head".
class TinyEncoder : public EncoderBackend {
 public:
  // spec.variant should be "tiny"; L, D and conv_dim are taken from spec.
  TinyEncoder(const EncoderSpec& spec, uint64_t seed);

  const EncoderSpec& spec() const override { return spec_; }
  LayerStack encode(const std::vector<double>& audio) const override;
  uint64_t checkpoint_hash() const override;
  std::unique_ptr<EncoderBackend> clone() const override;

  // Widens the output head to `vocab_size` letters. Must be called before
  // training or logits().
  void attach_ctc_head(int vocab_size, uint64_t seed);
  bool has_ctc_head() const { return vocab_size_ > 0; }
  int vocab_size() const { return vocab_size_; }

  struct Forward {
    nn::Tape::Var conv;                  // conv_dim x T
    std::vector<nn::Tape::Var> layers;   // each D x T
    nn::Tape::Var logits = -1;           // vocab x T when head attached
  };
  // Builds the differentiable graph for one utterance.
  Forward forward(nn::Tape& tape, const Matrix& windows,
                  bool with_head) const;

  // Per-frame letter logits (vocab x T), inference mode.
  Matrix logits(const std::vector<double>& audio) const;

  // Trainable parameters excluding frozen components.
  std::vector<nn::Parameter*> trainable_parameters(
      const std::set<std::string>& frozen_components);
  std::vector<const nn::Parameter*> all_parameters() const;

  // Checkpoint I/O. meta_json round-trips untouched alongside the weights.
  void save(const std::string& path, const std::string& meta_json) const;
  static std::unique_ptr<TinyEncoder> load(const std::string& path);
  static std::string load_meta(const std::string& path);

 private:
  TinyEncoder() = default;
  void init_params(uint64_t seed);
  std::vector<nn::Parameter*> mutable_parameters();

  EncoderSpec spec_;
  int vocab_size_ = 0;

  // feature_encoder
  mutable nn::Parameter fe_w_, fe_b_;
  // feature_projection
  mutable nn::Parameter fp_w_, fp_b_;
  // context layers: previous/current/next frame mixing
  struct Layer {
    nn::Parameter w_prev, w_cur, w_next, b;
  };
  mutable std::vector<Layer> layers_;
  // ctc_head
  mutable nn::Parameter head_prev_, head_cur_, head_next_, head_b_;
};

}  // namespace pronscore

#endif  // PRONSCORE_ENCODER_TINY_ENCODER_H_
