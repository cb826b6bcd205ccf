// src/encoder/frames.cc

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

#include "pronscore/encoder/frames.h"

#include "pronscore/common/error.h"

namespace pronscore {

Matrix frame_signal(const std::vector<double>& audio, const FrameLayout& fl) {
  const int T = frame_count(audio.size(), fl);
  if (T < 1)
    throw TooShortAudioError(
        "audio too short: " + std::to_string(audio.size()) +
        " samples, need at least " + std::to_string(fl.window));
  Matrix windows(fl.window, T);
  for (int t = 0; t < T; ++t)
    for (int i = 0; i < fl.window; ++i)
      windows(i, t) = audio[static_cast<size_t>(t) * fl.hop + i];
  return windows;
}

}  // namespace pronscore
