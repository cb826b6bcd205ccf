// include/pronscore/dataset/manifest.h

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

#ifndef PRONSCORE_DATASET_MANIFEST_H_
#define PRONSCORE_DATASET_MANIFEST_H_

#include <map>
#include <string>
#include <vector>

namespace pronscore {

struct ScoreScale {
  double min = 0.0;
  double max = 1.0;
};

// One audio recording with its script, speaker and human score labels.
struct ScoredUtterance {
  std::string utterance_id;
  std::string audio_path;    // 16 kHz mono waveform on disk
  std::string transcript;    // canonical script read aloud
  std::string speaker_id;
  std::map<std::string, double> scores;       // dimension -> value
  std::map<std::string, ScoreScale> scales;   // dimension -> (min, max)
  std::string canonical_split;  // "train" / "test" when the corpus defines one
};

struct DatasetManifest {
  std::string name;
  std::vector<ScoredUtterance> utterances;
  int sample_rate = 16000;

  bool has_canonical_split() const;
  std::vector<std::string> distinct_speakers() const;  // first-appearance order
  const ScoredUtterance& by_id(const std::string& utterance_id) const;
};

enum class ManifestFormat { kGenericJsonl, kSpeechocean762 };

struct ManifestLoadResult {
  DatasetManifest manifest;
  std::vector<std::string> skipped_missing_audio;  // utterance ids
  int warning_count = 0;
};

// Parses an external dataset into the corpus data model. Generic manifests
// are UTF-8 JSON lines with fields utterance_id, audio, speaker, transcript,
// scores{dim: value} and optional scales{dim: [min, max]} (default [1, 5])
// and split ("train"/"test"). Speechocean762 is the published directory
// layout (resource/scores.json plus train/ and test/ Kaldi-style indexes).
// strict=true turns missing-audio skips into fatal errors.
ManifestLoadResult load_manifest(const std::string& path, ManifestFormat format,
                                 bool strict = false);

// Throws ValidationError when any utterance breaks the data-model
// invariants (empty transcript/speaker, score outside its scale,
// duplicate ids, wrong sample rate).
void validate_manifest(const DatasetManifest& manifest);

// Writes the generic JSONL form (used by the `ingest` verb to normalize
// any supported input format).
void write_generic_manifest(const DatasetManifest& manifest,
                            const std::string& path);

// Maps a raw score into [0, 1] by its scale, and back.
double normalize_score(double value, const ScoreScale& scale);
double denormalize_score(double unit_value, const ScoreScale& scale);

}  // namespace pronscore

#endif  // PRONSCORE_DATASET_MANIFEST_H_
