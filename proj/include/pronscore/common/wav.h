// include/pronscore/common/wav.h

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

#ifndef PRONSCORE_COMMON_WAV_H_
#define PRONSCORE_COMMON_WAV_H_

#include <string>
#include <vector>

namespace pronscore {

struct Waveform {
  std::vector<double> samples;  // mono, in [-1, 1]
  int sample_rate = 0;
};

// Reads a RIFF/WAVE file. Supports PCM16 and IEEE float32, mono only;
// anything else raises ValidationError naming the file.
Waveform read_wav(const std::string& path);

// Writes mono PCM16.
void write_wav_pcm16(const std::string& path,
                     const std::vector<double>& samples, int sample_rate);

}  // namespace pronscore

#endif  // PRONSCORE_COMMON_WAV_H_
