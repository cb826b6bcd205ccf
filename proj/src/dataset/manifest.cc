// src/dataset/manifest.cc

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

#include "pronscore/dataset/manifest.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pronscore/common/error.h"
#include "pronscore/common/log.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace pronscore {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

void check_utterance(const ScoredUtterance& u) {
  if (trim(u.transcript).empty())
    throw ValidationError("utterance " + u.utterance_id +
                          ": transcript is empty");
  if (u.speaker_id.empty())
    throw ValidationError("utterance " + u.utterance_id +
                          ": speaker_id is empty");
  for (const auto& [dim, value] : u.scores) {
    auto it = u.scales.find(dim);
    if (it == u.scales.end())
      throw ValidationError("utterance " + u.utterance_id +
                            ": no scale declared for dimension " + dim);
    if (!std::isfinite(value) || value < it->second.min ||
        value > it->second.max) {
      std::ostringstream os;
      os << "utterance " << u.utterance_id << ": score " << dim << "=" << value
         << " outside scale [" << it->second.min << ", " << it->second.max
         << "]";
      throw ValidationError(os.str());
    }
  }
}

ManifestLoadResult load_generic_jsonl(const std::string& path, bool strict) {
  std::ifstream in(path);
  if (!in) throw FatalError("cannot open manifest file: " + path);

  ManifestLoadResult result;
  result.manifest.name = fs::path(path).stem().string();
  result.manifest.sample_rate = 16000;

  std::set<std::string> seen_ids;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      throw ValidationError(path + ":" + std::to_string(line_no) +
                            ": bad JSON record: " + e.what());
    }
    ScoredUtterance u;
    try {
      u.utterance_id = rec.at("utterance_id").get<std::string>();
      u.audio_path = rec.at("audio").get<std::string>();
      u.speaker_id = rec.at("speaker").get<std::string>();
      u.transcript = rec.at("transcript").get<std::string>();
      for (const auto& [dim, val] : rec.at("scores").items())
        u.scores[dim] = val.get<double>();
    } catch (const json::exception& e) {
      throw ValidationError(path + ":" + std::to_string(line_no) +
                            ": missing or malformed field: " + e.what());
    }
    if (rec.contains("scales")) {
      for (const auto& [dim, mm] : rec["scales"].items())
        u.scales[dim] = {mm.at(0).get<double>(), mm.at(1).get<double>()};
    }
    for (const auto& [dim, _] : u.scores)
      if (u.scales.find(dim) == u.scales.end()) u.scales[dim] = {1.0, 5.0};
    if (rec.contains("split"))
      u.canonical_split = rec["split"].get<std::string>();

    if (!seen_ids.insert(u.utterance_id).second)
      throw ValidationError(path + ":" + std::to_string(line_no) +
                            ": duplicate utterance_id " + u.utterance_id);

    // Resolve audio relative to the manifest location.
    fs::path audio(u.audio_path);
    if (audio.is_relative()) audio = fs::path(path).parent_path() / audio;
    u.audio_path = audio.string();
    if (!fs::exists(audio)) {
      if (strict)
        throw ValidationError("utterance " + u.utterance_id +
                              ": audio file missing: " + u.audio_path);
      result.skipped_missing_audio.push_back(u.utterance_id);
      continue;
    }
    check_utterance(u);
    result.manifest.utterances.push_back(std::move(u));
  }

  if (result.manifest.utterances.empty()) {
    log_warn("manifest " + path + " contains no usable utterances");
    ++result.warning_count;
  }
  if (!result.skipped_missing_audio.empty()) {
    log_warn("skipped " + std::to_string(result.skipped_missing_audio.size()) +
             " utterances with missing audio in " + path);
    ++result.warning_count;
  }
  return result;
}

// Reads Kaldi-style "key value..." index files.
std::map<std::string, std::string> read_index_file(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw FatalError("missing file: " + p.string());
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    const auto sep = line.find_first_of(" \t");
    if (sep == std::string::npos)
      throw ValidationError("malformed line in " + p.string() + ": " + line);
    out[line.substr(0, sep)] = trim(line.substr(sep + 1));
  }
  return out;
}

ManifestLoadResult load_speechocean762(const std::string& root, bool strict) {
  const fs::path base(root);
  const fs::path scores_file = base / "resource" / "scores.json";
  if (!fs::exists(scores_file))
    throw FatalError("missing file: " + scores_file.string());

  json scores;
  {
    std::ifstream in(scores_file);
    try {
      in >> scores;
    } catch (const json::exception& e) {
      throw ValidationError("bad JSON in " + scores_file.string() + ": " +
                            e.what());
    }
  }

  ManifestLoadResult result;
  result.manifest.name = "speechocean762";
  result.manifest.sample_rate = 16000;

  static const char* kDims[] = {"accuracy", "completeness", "fluency",
                                "prosodic", "total"};

  for (const char* part : {"train", "test"}) {
    const fs::path dir = base / part;
    if (!fs::exists(dir / "wav.scp")) continue;
    auto wav_scp = read_index_file(dir / "wav.scp");
    auto utt2spk = read_index_file(dir / "utt2spk");
    std::map<std::string, std::string> text;
    if (fs::exists(dir / "text")) text = read_index_file(dir / "text");

    for (const auto& [utt, wav_rel] : wav_scp) {
      auto sit = scores.find(utt);
      if (sit == scores.end())
        throw ValidationError("utterance " + utt +
                              " has no entry in resource/scores.json");
      ScoredUtterance u;
      u.utterance_id = utt;
      u.canonical_split = part;
      auto spk = utt2spk.find(utt);
      if (spk == utt2spk.end())
        throw ValidationError("utterance " + utt + " missing from utt2spk");
      u.speaker_id = spk->second;
      if (sit->contains("text"))
        u.transcript = (*sit)["text"].get<std::string>();
      else if (auto t = text.find(utt); t != text.end())
        u.transcript = t->second;
      for (const char* dim : kDims) {
        if (!sit->contains(dim))
          throw ValidationError("utterance " + utt +
                                ": scores.json entry lacks dimension " + dim);
        u.scores[dim] = (*sit)[dim].get<double>();
        u.scales[dim] = {0.0, 10.0};
      }
      fs::path audio(wav_rel);
      if (audio.is_relative()) audio = base / audio;
      u.audio_path = audio.string();
      if (!fs::exists(audio)) {
        if (strict)
          throw ValidationError("utterance " + utt +
                                ": audio file missing: " + u.audio_path);
        result.skipped_missing_audio.push_back(utt);
        continue;
      }
      check_utterance(u);
      result.manifest.utterances.push_back(std::move(u));
    }
  }

  if (result.manifest.utterances.empty())
    throw FatalError("no utterances found under " + root +
                     " (expected train/wav.scp or test/wav.scp)");
  if (!result.skipped_missing_audio.empty()) {
    log_warn("skipped " + std::to_string(result.skipped_missing_audio.size()) +
             " utterances with missing audio in " + root);
    ++result.warning_count;
  }
  return result;
}

}  // namespace

bool DatasetManifest::has_canonical_split() const {
  return !utterances.empty() &&
         std::all_of(utterances.begin(), utterances.end(),
                     [](const ScoredUtterance& u) {
                       return u.canonical_split == "train" ||
                              u.canonical_split == "test";
                     });
}

std::vector<std::string> DatasetManifest::distinct_speakers() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& u : utterances)
    if (seen.insert(u.speaker_id).second) out.push_back(u.speaker_id);
  return out;
}

const ScoredUtterance& DatasetManifest::by_id(
    const std::string& utterance_id) const {
  for (const auto& u : utterances)
    if (u.utterance_id == utterance_id) return u;
  throw ValidationError("unknown utterance_id: " + utterance_id);
}

ManifestLoadResult load_manifest(const std::string& path,
                                 ManifestFormat format, bool strict) {
  if (!fs::exists(path)) throw FatalError("missing file: " + path);
  ManifestLoadResult result =
      format == ManifestFormat::kGenericJsonl
          ? load_generic_jsonl(path, strict)
          : load_speechocean762(path, strict);
  validate_manifest(result.manifest);
  return result;
}

void validate_manifest(const DatasetManifest& manifest) {
  if (manifest.sample_rate != 16000)
    throw ValidationError("manifest sample_rate must be 16000, got " +
                          std::to_string(manifest.sample_rate));
  std::set<std::string> ids;
  for (const auto& u : manifest.utterances) {
    if (!ids.insert(u.utterance_id).second)
      throw ValidationError("duplicate utterance_id " + u.utterance_id);
    check_utterance(u);
  }
}

void write_generic_manifest(const DatasetManifest& manifest,
                            const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FatalError("cannot write manifest: " + path);
  for (const auto& u : manifest.utterances) {
    json rec;
    rec["utterance_id"] = u.utterance_id;
    rec["audio"] = u.audio_path;
    rec["speaker"] = u.speaker_id;
    rec["transcript"] = u.transcript;
    rec["scores"] = json::object();
    for (const auto& [dim, v] : u.scores) rec["scores"][dim] = v;
    rec["scales"] = json::object();
    for (const auto& [dim, s] : u.scales)
      rec["scales"][dim] = json::array({s.min, s.max});
    if (!u.canonical_split.empty()) rec["split"] = u.canonical_split;
    out << rec.dump() << "\n";
  }
}

double normalize_score(double value, const ScoreScale& scale) {
  return (value - scale.min) / (scale.max - scale.min);
}

double denormalize_score(double unit_value, const ScoreScale& scale) {
  return scale.min + unit_value * (scale.max - scale.min);
}

}  // namespace pronscore
