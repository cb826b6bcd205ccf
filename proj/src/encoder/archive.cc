// src/encoder/archive.cc

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

#include "pronscore/encoder/archive.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "pronscore/common/error.h"
#include "pronscore/common/hash.h"
#include "pronscore/common/log.h"
#include "pronscore/common/wav.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace pronscore {

namespace {

constexpr char kMagic[4] = {'P', 'S', 'F', '1'};

// Fixed 48-byte record header; see docs/formats.md for the byte layout.
struct RecordHeader {
  uint32_t kind = 0;
  uint64_t spec_hash = 0;
  uint32_t frames = 0;
  uint32_t width = 0;
  uint32_t dtype = 0;
  uint32_t n_layers = 0;
  uint32_t conv_dim = 0;
  uint64_t checksum = 0;
};

void append_u32(std::string& b, uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void append_u64(std::string& b, uint64_t v) {
  for (int i = 0; i < 8; ++i) b.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
uint32_t take_u32(const std::string& b, size_t& at) {
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(static_cast<unsigned char>(b[at++])) << (8 * i);
  return v;
}
uint64_t take_u64(const std::string& b, size_t& at) {
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(static_cast<unsigned char>(b[at++])) << (8 * i);
  return v;
}

void append_matrix(std::string& payload, const Matrix& m, ArchiveDtype dtype) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (dtype == ArchiveDtype::kFloat32) {
        const float f = static_cast<float>(m(r, c));
        char raw[4];
        std::memcpy(raw, &f, 4);
        payload.append(raw, 4);
      } else {
        const double d = m(r, c);
        char raw[8];
        std::memcpy(raw, &d, 8);
        payload.append(raw, 8);
      }
    }
}

Matrix take_matrix(const std::string& payload, size_t& at, int rows, int cols,
                   ArchiveDtype dtype) {
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (dtype == ArchiveDtype::kFloat32) {
        float f;
        std::memcpy(&f, payload.data() + at, 4);
        at += 4;
        m(r, c) = f;
      } else {
        double d;
        std::memcpy(&d, payload.data() + at, 8);
        at += 8;
        m(r, c) = d;
      }
    }
  return m;
}

std::string sanitize_id(const std::string& id) {
  std::string out;
  for (char c : id)
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  return out + "_" + hash_hex(fnv1a64(id)).substr(8);
}

void write_record(const std::string& path, const RecordHeader& hdr,
                  const std::string& payload) {
  std::string buf;
  buf.append(kMagic, 4);
  append_u32(buf, hdr.kind);
  append_u64(buf, hdr.spec_hash);
  append_u32(buf, hdr.frames);
  append_u32(buf, hdr.width);
  append_u32(buf, hdr.dtype);
  append_u32(buf, hdr.n_layers);
  append_u32(buf, hdr.conv_dim);
  append_u32(buf, 0);  // reserved
  append_u64(buf, fnv1a64(payload.data(), payload.size()));
  buf += payload;
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw FatalError("cannot write feature record: " + path);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw FatalError("short write to feature record: " + path);
  }
  fs::rename(tmp, path);
}

bool read_record(const std::string& path, RecordHeader* hdr,
                 std::string* payload) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string buf = ss.str();
  if (buf.size() < 48 || std::memcmp(buf.data(), kMagic, 4) != 0) return false;
  size_t at = 4;
  hdr->kind = take_u32(buf, at);
  hdr->spec_hash = take_u64(buf, at);
  hdr->frames = take_u32(buf, at);
  hdr->width = take_u32(buf, at);
  hdr->dtype = take_u32(buf, at);
  hdr->n_layers = take_u32(buf, at);
  hdr->conv_dim = take_u32(buf, at);
  take_u32(buf, at);  // reserved
  hdr->checksum = take_u64(buf, at);
  *payload = buf.substr(at);
  return fnv1a64(payload->data(), payload->size()) == hdr->checksum;
}

}  // namespace

uint64_t ArchiveMeta::spec_hash() const {
  uint64_t h = fnv1a64(encoder_spec);
  h = fnv1a64(selection.data(), selection.size(), h);
  h = fnv1a64(&checkpoint_hash, sizeof(checkpoint_hash), h);
  return h;
}

std::string ArchiveMeta::to_json() const {
  json j;
  j["encoder_spec"] = encoder_spec;
  j["selection"] = selection;
  j["checkpoint_hash"] = hash_hex(checkpoint_hash);
  j["kind"] = kind == ArchiveKind::kMatrix ? "matrix" : "layer_stack";
  j["dtype"] = dtype == ArchiveDtype::kFloat32 ? "f32" : "f64";
  return j.dump(2);
}

ArchiveMeta ArchiveMeta::from_json(const std::string& s) {
  json j = json::parse(s);
  ArchiveMeta m;
  m.encoder_spec = j.at("encoder_spec").get<std::string>();
  m.selection = j.at("selection").get<std::string>();
  m.checkpoint_hash =
      std::stoull(j.at("checkpoint_hash").get<std::string>(), nullptr, 16);
  m.kind = j.at("kind").get<std::string>() == "matrix" ? ArchiveKind::kMatrix
                                                       : ArchiveKind::kLayerStack;
  m.dtype = j.at("dtype").get<std::string>() == "f32" ? ArchiveDtype::kFloat32
                                                      : ArchiveDtype::kFloat64;
  return m;
}

FeatureArchive FeatureArchive::open_or_create(const std::string& dir,
                                              const ArchiveMeta& meta) {
  const fs::path base(dir);
  const fs::path meta_path = base / "meta.json";
  if (fs::exists(meta_path)) {
    std::ifstream in(meta_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    const ArchiveMeta existing = ArchiveMeta::from_json(ss.str());
    if (existing.spec_hash() != meta.spec_hash() ||
        existing.kind != meta.kind)
      throw FatalError(
          "feature cache " + dir +
          " was built with a different encoder/selection; use a fresh "
          "cache directory");
    FeatureArchive a;
    a.dir_ = dir;
    a.meta_ = existing;
    return a;
  }
  fs::create_directories(base / "records");
  std::ofstream out(meta_path);
  out << meta.to_json() << "\n";
  FeatureArchive a;
  a.dir_ = dir;
  a.meta_ = meta;
  return a;
}

FeatureArchive FeatureArchive::open(const std::string& dir) {
  const fs::path meta_path = fs::path(dir) / "meta.json";
  if (!fs::exists(meta_path))
    throw FatalError("not a feature archive (no meta.json): " + dir);
  std::ifstream in(meta_path);
  std::ostringstream ss;
  ss << in.rdbuf();
  FeatureArchive a;
  a.dir_ = dir;
  a.meta_ = ArchiveMeta::from_json(ss.str());
  return a;
}

std::string FeatureArchive::record_path(const std::string& id) const {
  return (fs::path(dir_) / "records" / (sanitize_id(id) + ".feat")).string();
}

bool FeatureArchive::contains_valid(const std::string& id) const {
  RecordHeader hdr;
  std::string payload;
  if (!read_record(record_path(id), &hdr, &payload)) return false;
  return hdr.spec_hash == meta_.spec_hash();
}

void FeatureArchive::put_matrix(const std::string& id, const Matrix& m) const {
  RecordHeader hdr;
  hdr.kind = 0;
  hdr.spec_hash = meta_.spec_hash();
  hdr.frames = static_cast<uint32_t>(m.rows());
  hdr.width = static_cast<uint32_t>(m.cols());
  hdr.dtype = meta_.dtype == ArchiveDtype::kFloat32 ? 0 : 1;
  std::string payload;
  append_matrix(payload, m, meta_.dtype);
  write_record(record_path(id), hdr, payload);
}

Matrix FeatureArchive::get_matrix(const std::string& id) const {
  RecordHeader hdr;
  std::string payload;
  if (!read_record(record_path(id), &hdr, &payload))
    throw ValidationError("feature record missing or corrupt for utterance " +
                          id);
  if (hdr.kind != 0)
    throw ValidationError("record for " + id + " is a layer stack, not a matrix");
  size_t at = 0;
  return take_matrix(payload, at, hdr.frames, hdr.width,
                     hdr.dtype == 0 ? ArchiveDtype::kFloat32
                                    : ArchiveDtype::kFloat64);
}

void FeatureArchive::put_stack(const std::string& id,
                               const LayerStack& s) const {
  RecordHeader hdr;
  hdr.kind = 1;
  hdr.spec_hash = meta_.spec_hash();
  hdr.frames = static_cast<uint32_t>(s.frames());
  hdr.width = static_cast<uint32_t>(s.layers.front().cols());
  hdr.dtype = meta_.dtype == ArchiveDtype::kFloat32 ? 0 : 1;
  hdr.n_layers = static_cast<uint32_t>(s.num_layers());
  hdr.conv_dim = static_cast<uint32_t>(s.conv_features.cols());
  std::string payload;
  append_matrix(payload, s.conv_features, meta_.dtype);
  for (const auto& layer : s.layers) append_matrix(payload, layer, meta_.dtype);
  write_record(record_path(id), hdr, payload);
}

LayerStack FeatureArchive::get_stack(const std::string& id) const {
  RecordHeader hdr;
  std::string payload;
  if (!read_record(record_path(id), &hdr, &payload))
    throw ValidationError("feature record missing or corrupt for utterance " +
                          id);
  if (hdr.kind != 1)
    throw ValidationError("record for " + id + " is a matrix, not a layer stack");
  const auto dtype =
      hdr.dtype == 0 ? ArchiveDtype::kFloat32 : ArchiveDtype::kFloat64;
  LayerStack s;
  s.utterance_id = id;
  size_t at = 0;
  s.conv_features = take_matrix(payload, at, hdr.frames, hdr.conv_dim, dtype);
  for (uint32_t l = 0; l < hdr.n_layers; ++l)
    s.layers.push_back(take_matrix(payload, at, hdr.frames, hdr.width, dtype));
  return s;
}

void FeatureArchive::write_index() const {
  json idx;
  idx["version"] = 1;
  idx["entries"] = json::object();
  for (const auto& entry : fs::directory_iterator(fs::path(dir_) / "records"))
    if (entry.path().extension() == ".feat")
      idx["entries"][entry.path().stem().string()] =
          "records/" + entry.path().filename().string();
  std::ofstream out(fs::path(dir_) / "index.json");
  out << idx.dump(2) << "\n";
}

std::vector<std::string> FeatureArchive::ids() const {
  std::vector<std::string> out;
  const fs::path records = fs::path(dir_) / "records";
  if (!fs::exists(records)) return out;
  for (const auto& entry : fs::directory_iterator(records))
    if (entry.path().extension() == ".feat")
      out.push_back(entry.path().stem().string());
  std::sort(out.begin(), out.end());
  return out;
}

ExtractResult extract_corpus(const DatasetManifest& manifest,
                             const EncoderBackend& backend,
                             const LayerSelection& selection,
                             const std::string& cache_dir,
                             const ExtractOptions& options) {
  ArchiveMeta meta;
  meta.encoder_spec = backend.spec().canonical_string();
  meta.selection = options.keep_stacks ? "stack" : selection.canonical_string();
  meta.checkpoint_hash = backend.checkpoint_hash();
  meta.kind = options.keep_stacks ? ArchiveKind::kLayerStack : ArchiveKind::kMatrix;
  meta.dtype = options.dtype;
  FeatureArchive archive = FeatureArchive::open_or_create(cache_dir, meta);

  std::vector<const ScoredUtterance*> todo;
  int hits = 0;
  for (const auto& u : manifest.utterances) {
    if (archive.contains_valid(u.utterance_id))
      ++hits;
    else
      todo.push_back(&u);
  }

  ExtractResult result;
  result.cache_hits = hits;

  std::atomic<size_t> next{0};
  std::atomic<int> encoded{0};
  std::mutex failures_mutex;
  std::vector<std::string> failures;

  auto worker = [&](const EncoderBackend& be) {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= todo.size()) break;
      const ScoredUtterance& u = *todo[i];
      try {
        const Waveform wav = read_wav(u.audio_path);
        if (wav.sample_rate != manifest.sample_rate)
          throw ValidationError("expected " +
                                std::to_string(manifest.sample_rate) +
                                " Hz, got " + std::to_string(wav.sample_rate));
        LayerStack stack = be.encode(wav.samples);
        stack.utterance_id = u.utterance_id;
        if (options.keep_stacks)
          archive.put_stack(u.utterance_id, stack);
        else
          archive.put_matrix(u.utterance_id, aggregate(stack, selection));
        ++encoded;
      } catch (const Error& e) {
        std::lock_guard<std::mutex> lock(failures_mutex);
        failures.push_back(u.utterance_id);
        log_warn("utterance " + u.utterance_id + ": " + e.what());
      }
    }
  };

  const int jobs = std::max(1, options.jobs);
  if (jobs == 1 || todo.size() <= 1) {
    worker(backend);
  } else {
    // Each worker owns its own backend handle.
    std::vector<std::unique_ptr<EncoderBackend>> clones;
    std::vector<std::thread> threads;
    for (int j = 0; j < jobs; ++j) clones.push_back(backend.clone());
    for (int j = 0; j < jobs; ++j)
      threads.emplace_back([&, j] { worker(*clones[j]); });
    for (auto& t : threads) t.join();
  }

  result.encoded = encoded.load();
  result.failed_ids = failures;
  archive.write_index();
  return result;
}

}  // namespace pronscore
