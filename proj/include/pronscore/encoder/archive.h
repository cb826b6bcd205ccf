// include/pronscore/encoder/archive.h

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

#ifndef PRONSCORE_ENCODER_ARCHIVE_H_
#define PRONSCORE_ENCODER_ARCHIVE_H_

#include <optional>
#include <string>
#include <vector>

#include "pronscore/dataset/manifest.h"
#include "pronscore/encoder/encoder.h"

namespace pronscore {

enum class ArchiveKind { kMatrix, kLayerStack };
enum class ArchiveDtype { kFloat32, kFloat64 };

// Identity of a feature cache: which encoder weights produced it and how
// layers were reduced. Extraction refuses to reuse a directory whose meta
// disagrees.
struct ArchiveMeta {
  std::string encoder_spec;     // EncoderSpec::canonical_string()
  std::string selection;        // LayerSelection canonical string, or "stack"
  uint64_t checkpoint_hash = 0;
  ArchiveKind kind = ArchiveKind::kMatrix;
  ArchiveDtype dtype = ArchiveDtype::kFloat32;

  uint64_t spec_hash() const;
  std::string to_json() const;
  static ArchiveMeta from_json(const std::string& s);
};

// One directory of per-utterance feature records plus meta.json and
// index.json. Record files are independent, so concurrent writers of
// distinct utterances are safe; write_index() is a single-writer step.
class FeatureArchive {
 public:
  // Creates the directory (with meta) or opens it, verifying the meta.
  static FeatureArchive open_or_create(const std::string& dir,
                                       const ArchiveMeta& meta);
  static FeatureArchive open(const std::string& dir);

  const ArchiveMeta& meta() const { return meta_; }
  const std::string& dir() const { return dir_; }

  // True when a record exists, parses, and passes spec-hash and checksum
  // verification.
  bool contains_valid(const std::string& utterance_id) const;

  void put_matrix(const std::string& utterance_id, const Matrix& m) const;
  Matrix get_matrix(const std::string& utterance_id) const;

  void put_stack(const std::string& utterance_id, const LayerStack& s) const;
  LayerStack get_stack(const std::string& utterance_id) const;

  // Scans record files and (re)writes index.json.
  void write_index() const;
  std::vector<std::string> ids() const;

 private:
  std::string record_path(const std::string& utterance_id) const;

  std::string dir_;
  ArchiveMeta meta_;
};

struct ExtractResult {
  int encoded = 0;     // utterances freshly encoded this run
  int cache_hits = 0;  // valid records reused
  std::vector<std::string> failed_ids;
};

struct ExtractOptions {
  int jobs = 1;
  ArchiveDtype dtype = ArchiveDtype::kFloat32;
  bool keep_stacks = false;  // store full LayerStacks instead of aggregates
};

// Encodes every manifest utterance and persists features keyed by
// utterance id. Re-running against an unchanged (checkpoint, selection)
// pair re-encodes nothing; corrupt records are re-extracted; a different
// (checkpoint, selection) against the same directory is fatal.
ExtractResult extract_corpus(const DatasetManifest& manifest,
                             const EncoderBackend& backend,
                             const LayerSelection& selection,
                             const std::string& cache_dir,
                             const ExtractOptions& options = {});

}  // namespace pronscore

#endif  // PRONSCORE_ENCODER_ARCHIVE_H_
