// src/nn/serialize.cc

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

#include "pronscore/nn/serialize.h"

#include <cstring>
#include <fstream>
#include <sstream>

#include "pronscore/common/error.h"
#include "pronscore/common/hash.h"

namespace pronscore::nn {

namespace {

constexpr char kMagic[4] = {'P', 'S', 'T', 'N'};
constexpr uint32_t kVersion = 1;

void put_u32(std::string& buf, uint32_t v) {
  for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& buf, uint64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

uint32_t get_u32(const std::string& buf, size_t& at) {
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(static_cast<unsigned char>(buf[at++])) << (8 * i);
  return v;
}

uint64_t get_u64(const std::string& buf, size_t& at) {
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(static_cast<unsigned char>(buf[at++])) << (8 * i);
  return v;
}

}  // namespace

void write_tensor_file(const std::string& path, const TensorFile& file) {
  std::string buf;
  buf.append(kMagic, 4);
  put_u32(buf, kVersion);
  put_u64(buf, file.meta_json.size());
  buf += file.meta_json;
  put_u32(buf, static_cast<uint32_t>(file.tensors.size()));
  for (const auto& [name, m] : file.tensors) {
    put_u32(buf, static_cast<uint32_t>(name.size()));
    buf += name;
    put_u32(buf, static_cast<uint32_t>(m.rows()));
    put_u32(buf, static_cast<uint32_t>(m.cols()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        const double d = m(r, c);
        char raw[8];
        std::memcpy(raw, &d, 8);
        buf.append(raw, 8);
      }
  }
  const uint64_t checksum = fnv1a64(buf.data(), buf.size());
  put_u64(buf, checksum);

  std::ofstream out(path, std::ios::binary);
  if (!out) throw FatalError("cannot write checkpoint: " + path);
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw FatalError("short write to checkpoint: " + path);
}

TensorFile read_tensor_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FatalError("missing checkpoint: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string buf = ss.str();
  if (buf.size() < 24 || std::memcmp(buf.data(), kMagic, 4) != 0)
    throw ValidationError("not a tensor checkpoint: " + path);

  size_t tail = buf.size() - 8;
  uint64_t stored = 0;
  {
    size_t at = tail;
    stored = get_u64(buf, at);
  }
  if (fnv1a64(buf.data(), tail) != stored)
    throw ValidationError("checkpoint checksum mismatch: " + path);

  size_t at = 4;
  const uint32_t version = get_u32(buf, at);
  if (version != kVersion)
    throw ValidationError("unsupported checkpoint version " +
                          std::to_string(version) + ": " + path);
  const uint64_t meta_len = get_u64(buf, at);
  TensorFile file;
  file.meta_json = buf.substr(at, meta_len);
  at += meta_len;
  const uint32_t count = get_u32(buf, at);
  for (uint32_t i = 0; i < count; ++i) {
    const uint32_t name_len = get_u32(buf, at);
    std::string name = buf.substr(at, name_len);
    at += name_len;
    const uint32_t rows = get_u32(buf, at);
    const uint32_t cols = get_u32(buf, at);
    Matrix m(rows, cols);
    for (uint32_t r = 0; r < rows; ++r)
      for (uint32_t c = 0; c < cols; ++c) {
        double d;
        std::memcpy(&d, buf.data() + at, 8);
        at += 8;
        m(r, c) = d;
      }
    file.tensors.emplace_back(std::move(name), std::move(m));
  }
  return file;
}

uint64_t parameters_hash(const std::vector<const Parameter*>& params) {
  uint64_t h = 14695981039346656037ull;
  for (const Parameter* p : params) {
    h = fnv1a64(p->name.data(), p->name.size(), h);
    h = fnv1a64(p->value.data(),
                sizeof(double) * static_cast<size_t>(p->value.size()), h);
  }
  return h;
}

}  // namespace pronscore::nn
