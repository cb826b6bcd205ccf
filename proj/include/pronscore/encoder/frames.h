// include/pronscore/encoder/frames.h

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

#ifndef PRONSCORE_ENCODER_FRAMES_H_
#define PRONSCORE_ENCODER_FRAMES_H_

#include <vector>

#include "pronscore/encoder/encoder.h"

namespace pronscore {

struct FrameLayout {
  int window = 400;  // samples per analysis window (25 ms at 16 kHz)
  int hop = 320;     // samples between frames (frame_stride * 16000)
};

inline FrameLayout frame_layout(const EncoderSpec& spec) {
  FrameLayout fl;
  fl.hop = static_cast<int>(spec.frame_stride * 16000.0 + 0.5);
  fl.window = fl.hop + 80;
  return fl;
}

inline int frame_count(size_t num_samples, const FrameLayout& fl) {
  if (num_samples < static_cast<size_t>(fl.window)) return 0;
  return 1 + static_cast<int>((num_samples - fl.window) / fl.hop);
}

// window x T matrix of raw sample windows. Throws TooShortAudioError when
// the audio does not fill one window.
Matrix frame_signal(const std::vector<double>& audio, const FrameLayout& fl);

}  // namespace pronscore

#endif  // PRONSCORE_ENCODER_FRAMES_H_
