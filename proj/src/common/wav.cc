// src/common/wav.cc

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

#include "pronscore/common/wav.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "pronscore/common/error.h"

namespace pronscore {

namespace {

uint32_t read_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
         (static_cast<uint32_t>(b[2]) << 16) |
         (static_cast<uint32_t>(b[3]) << 24);
}

uint16_t read_u16(std::istream& in) {
  unsigned char b[2];
  in.read(reinterpret_cast<char*>(b), 2);
  return static_cast<uint16_t>(b[0] | (b[1] << 8));
}

void write_u32(std::ostream& out, uint32_t v) {
  char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
               static_cast<char>((v >> 16) & 0xff),
               static_cast<char>((v >> 24) & 0xff)};
  out.write(b, 4);
}

void write_u16(std::ostream& out, uint16_t v) {
  char b[2] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff)};
  out.write(b, 2);
}

}  // namespace

Waveform read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open wav file: " + path);

  char tag[4];
  in.read(tag, 4);
  if (!in || std::memcmp(tag, "RIFF", 4) != 0)
    throw ValidationError("not a RIFF file: " + path);
  read_u32(in);  // riff size
  in.read(tag, 4);
  if (!in || std::memcmp(tag, "WAVE", 4) != 0)
    throw ValidationError("not a WAVE file: " + path);

  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  bool have_fmt = false;
  Waveform wav;

  while (in.read(tag, 4)) {
    const uint32_t chunk_size = read_u32(in);
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      format = read_u16(in);
      channels = read_u16(in);
      rate = read_u32(in);
      read_u32(in);  // byte rate
      read_u16(in);  // block align
      bits = read_u16(in);
      if (chunk_size > 16) in.seekg(chunk_size - 16, std::ios::cur);
      have_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      if (!have_fmt) throw ValidationError("wav data before fmt: " + path);
      if (channels != 1)
        throw ValidationError("expected mono audio, got " +
                              std::to_string(channels) + " channels: " + path);
      if (format == 1 && bits == 16) {
        const size_t n = chunk_size / 2;
        std::vector<int16_t> raw(n);
        in.read(reinterpret_cast<char*>(raw.data()), chunk_size);
        wav.samples.resize(n);
        for (size_t i = 0; i < n; ++i) wav.samples[i] = raw[i] / 32768.0;
      } else if (format == 3 && bits == 32) {
        const size_t n = chunk_size / 4;
        std::vector<float> raw(n);
        in.read(reinterpret_cast<char*>(raw.data()), chunk_size);
        wav.samples.assign(raw.begin(), raw.end());
      } else {
        throw ValidationError("unsupported wav encoding (format " +
                              std::to_string(format) + ", " +
                              std::to_string(bits) + " bit): " + path);
      }
      wav.sample_rate = static_cast<int>(rate);
      return wav;
    } else {
      // skip LIST/fact/etc; chunks are word aligned
      in.seekg(chunk_size + (chunk_size & 1), std::ios::cur);
    }
  }
  throw ValidationError("wav file has no data chunk: " + path);
}

void write_wav_pcm16(const std::string& path,
                     const std::vector<double>& samples, int sample_rate) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FatalError("cannot write wav file: " + path);
  const uint32_t data_size = static_cast<uint32_t>(samples.size() * 2);
  out.write("RIFF", 4);
  write_u32(out, 36 + data_size);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  write_u32(out, 16);
  write_u16(out, 1);  // PCM
  write_u16(out, 1);  // mono
  write_u32(out, static_cast<uint32_t>(sample_rate));
  write_u32(out, static_cast<uint32_t>(sample_rate * 2));
  write_u16(out, 2);
  write_u16(out, 16);
  out.write("data", 4);
  write_u32(out, data_size);
  for (double s : samples) {
    const double clamped = std::clamp(s, -1.0, 1.0);
    const int16_t v = static_cast<int16_t>(std::lrint(clamped * 32767.0));
    char b[2] = {static_cast<char>(v & 0xff),
                 static_cast<char>((v >> 8) & 0xff)};
    out.write(b, 2);
  }
  if (!out) throw FatalError("short write to wav file: " + path);
}

}  // namespace pronscore
