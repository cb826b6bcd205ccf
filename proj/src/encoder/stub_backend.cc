// src/encoder/stub_backend.cc

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

#include <cmath>

#include "pronscore/common/error.h"
#include "pronscore/common/hash.h"
#include "pronscore/common/rng.h"
#include "pronscore/encoder/encoder.h"
#include "pronscore/encoder/frames.h"

namespace pronscore {

namespace {

constexpr int kRawChannels = 8;

Matrix seeded_matrix(int rows, int cols, double scl, Rng& rng) {
  Matrix m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = scl * rng.normal();
  return m;
}

class StubEncoderBackend : public EncoderBackend {
 public:
  StubEncoderBackend(const EncoderSpec& spec, uint64_t seed)
      : spec_(spec), seed_(seed) {
    spec_.validate();
    Rng rng(seed ^ fnv1a64(spec_.canonical_string()));
    const double c_scl = 1.0 / std::sqrt(static_cast<double>(kRawChannels));
    conv_w_ = seeded_matrix(spec_.conv_dim, kRawChannels, c_scl, rng);
    conv_b_ = seeded_matrix(spec_.conv_dim, 1, 0.1, rng);
    proj_w_ = seeded_matrix(spec_.hidden_dim, spec_.conv_dim,
                            1.0 / std::sqrt((double)spec_.conv_dim), rng);
    proj_b_ = seeded_matrix(spec_.hidden_dim, 1, 0.1, rng);
    const double l_scl = 0.5 / std::sqrt(static_cast<double>(spec_.hidden_dim));
    for (int l = 0; l < spec_.num_transformer_layers; ++l) {
      layer_w_.push_back(
          seeded_matrix(spec_.hidden_dim, spec_.hidden_dim, l_scl, rng));
      layer_b_.push_back(seeded_matrix(spec_.hidden_dim, 1, 0.05, rng));
    }
  }

  const EncoderSpec& spec() const override { return spec_; }

  LayerStack encode(const std::vector<double>& audio) const override {
    const FrameLayout layout = frame_layout(spec_);
    const Matrix windows = frame_signal(audio, layout);  // window x T
    const int T = static_cast<int>(windows.cols());

    // Raw per-frame channels: energy, zero crossings, coarse band energies
    // and a frame-position channel so downstream pooling can see duration.
    Matrix raw(kRawChannels, T);
    for (int t = 0; t < T; ++t) {
      const auto& w = windows.col(t);
      const int n = static_cast<int>(w.size());
      double energy = w.squaredNorm() / n;
      int zc = 0;
      double b0 = 0, b1 = 0, b2 = 0;
      for (int i = 1; i < n; ++i) {
        if ((w[i] >= 0) != (w[i - 1] >= 0)) ++zc;
        const double d = w[i] - w[i - 1];
        b0 += w[i] * w[i - 1];
        b1 += d * d;
        b2 += std::abs(w[i]);
      }
      raw(0, t) = std::log1p(1e4 * energy);
      raw(1, t) = static_cast<double>(zc) / n;
      raw(2, t) = std::log1p(static_cast<double>(t));
      raw(3, t) = 0.01 * static_cast<double>(t);
      raw(4, t) = std::tanh(b0 / n);
      raw(5, t) = std::log1p(1e4 * b1 / n);
      raw(6, t) = b2 / n;
      raw(7, t) = 1.0;
    }

    LayerStack stack;
    Matrix conv =
        ((conv_w_ * raw).colwise() + Eigen::VectorXd(conv_b_.col(0)))
            .array()
            .tanh()
            .matrix();
    Matrix h = ((proj_w_ * conv).colwise() + Eigen::VectorXd(proj_b_.col(0)))
                   .array()
                   .tanh()
                   .matrix();
    stack.conv_features = conv.transpose();
    for (int l = 0; l < spec_.num_transformer_layers; ++l) {
      Matrix mixed =
          ((layer_w_[l] * h).colwise() + Eigen::VectorXd(layer_b_[l].col(0)))
              .array()
              .tanh()
              .matrix();
      h = h + mixed;
      stack.layers.push_back(h.transpose());
    }
    stack.validate();
    return stack;
  }

  uint64_t checkpoint_hash() const override {
    return fnv1a64(spec_.canonical_string()) ^ (seed_ * 0x9e3779b97f4a7c15ull);
  }

  std::unique_ptr<EncoderBackend> clone() const override {
    return std::make_unique<StubEncoderBackend>(spec_, seed_);
  }

 private:
  EncoderSpec spec_;
  uint64_t seed_;
  Matrix conv_w_, conv_b_, proj_w_, proj_b_;
  std::vector<Matrix> layer_w_, layer_b_;
};

}  // namespace

std::unique_ptr<EncoderBackend> make_stub_backend(const EncoderSpec& spec,
                                                  uint64_t seed) {
  return std::make_unique<StubEncoderBackend>(spec, seed);
}

}  // namespace pronscore
