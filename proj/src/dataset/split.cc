// src/dataset/split.cc

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

#include "pronscore/dataset/split.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

#include "pronscore/common/error.h"
#include "pronscore/common/log.h"
#include "pronscore/common/rng.h"

using nlohmann::json;

namespace pronscore {

namespace {

std::vector<std::string> utterances_of_speakers(
    const DatasetManifest& manifest, const std::set<std::string>& speakers) {
  std::vector<std::string> out;
  for (const auto& u : manifest.utterances)
    if (speakers.count(u.speaker_id)) out.push_back(u.utterance_id);
  return out;
}

int validation_speaker_count(double fraction, int remaining) {
  if (remaining <= 1) return 0;
  int n = static_cast<int>(std::lround(fraction * remaining));
  n = std::max(n, 1);
  n = std::min(n, remaining - 1);  // keep the training side non-empty
  return n;
}

}  // namespace

SplitPlan make_speaker_kfold(const DatasetManifest& manifest, int k,
                             double validation_fraction, uint64_t seed) {
  if (k < 2) throw ValidationError("speaker k-fold requires k >= 2, got " +
                                   std::to_string(k));
  if (validation_fraction <= 0.0 || validation_fraction >= 1.0)
    throw ValidationError("validation_fraction must lie in (0, 1)");

  std::vector<std::string> speakers = manifest.distinct_speakers();
  const int n = static_cast<int>(speakers.size());
  if (n < k)
    throw ValidationError("fewer speakers (" + std::to_string(n) +
                          ") than folds (" + std::to_string(k) + ")");

  Rng rng(seed);
  rng.shuffle(speakers);

  // Near-equal groups: the first (n mod k) groups get one extra speaker.
  std::vector<std::vector<std::string>> groups(k);
  const int base = n / k;
  const int extra = n % k;
  int at = 0;
  for (int g = 0; g < k; ++g) {
    const int size = base + (g < extra ? 1 : 0);
    groups[g].assign(speakers.begin() + at, speakers.begin() + at + size);
    at += size;
  }

  SplitPlan plan;
  plan.strategy = SplitStrategy::kSpeakerKfold;
  plan.seed = seed;
  for (int fold_idx = 0; fold_idx < k; ++fold_idx) {
    std::vector<std::string> rest;
    for (int g = 0; g < k; ++g)
      if (g != fold_idx)
        rest.insert(rest.end(), groups[g].begin(), groups[g].end());
    Rng fold_rng(seed ^ (0x9e3779b97f4a7c15ull * (fold_idx + 1)));
    fold_rng.shuffle(rest);
    const int n_val =
        validation_speaker_count(validation_fraction, static_cast<int>(rest.size()));

    std::set<std::string> val_spk(rest.begin(), rest.begin() + n_val);
    std::set<std::string> train_spk(rest.begin() + n_val, rest.end());
    std::set<std::string> test_spk(groups[fold_idx].begin(),
                                   groups[fold_idx].end());

    Fold fold;
    fold.train_ids = utterances_of_speakers(manifest, train_spk);
    fold.validation_ids = utterances_of_speakers(manifest, val_spk);
    fold.test_ids = utterances_of_speakers(manifest, test_spk);
    plan.folds.push_back(std::move(fold));
  }
  validate_split(plan, manifest);
  return plan;
}

SplitPlan make_fixed_split(const DatasetManifest& manifest,
                           double train_fraction, uint64_t seed,
                           bool by_speaker) {
  if (train_fraction <= 0.0 || train_fraction >= 1.0)
    throw ValidationError("train_fraction must lie in (0, 1)");

  SplitPlan plan;
  plan.strategy = SplitStrategy::kFixedTrainTest;
  plan.seed = seed;
  Fold fold;

  if (manifest.has_canonical_split()) {
    for (const auto& u : manifest.utterances) {
      if (u.canonical_split == "train")
        fold.train_ids.push_back(u.utterance_id);
      else
        fold.test_ids.push_back(u.utterance_id);
    }
  } else if (by_speaker) {
    std::vector<std::string> speakers = manifest.distinct_speakers();
    Rng rng(seed);
    rng.shuffle(speakers);
    const int n_train = std::clamp(
        static_cast<int>(std::lround(train_fraction * speakers.size())), 1,
        static_cast<int>(speakers.size()) - 1);
    std::set<std::string> train_spk(speakers.begin(),
                                    speakers.begin() + n_train);
    for (const auto& u : manifest.utterances) {
      if (train_spk.count(u.speaker_id))
        fold.train_ids.push_back(u.utterance_id);
      else
        fold.test_ids.push_back(u.utterance_id);
    }
  } else {
    std::vector<std::string> ids;
    for (const auto& u : manifest.utterances) ids.push_back(u.utterance_id);
    Rng rng(seed);
    rng.shuffle(ids);
    const int n_train =
        std::clamp(static_cast<int>(std::lround(train_fraction * ids.size())),
                   1, static_cast<int>(ids.size()) - 1);
    fold.train_ids.assign(ids.begin(), ids.begin() + n_train);
    fold.test_ids.assign(ids.begin() + n_train, ids.end());
    // Restore manifest order for determinism across shuffles of equal seeds.
    std::sort(fold.train_ids.begin(), fold.train_ids.end());
    std::sort(fold.test_ids.begin(), fold.test_ids.end());
  }

  plan.folds.push_back(std::move(fold));
  validate_split(plan, manifest);
  return plan;
}

void validate_split(const SplitPlan& plan, const DatasetManifest& manifest) {
  std::set<std::string> all_ids;
  for (const auto& u : manifest.utterances) all_ids.insert(u.utterance_id);

  std::map<std::string, std::string> speaker_of;
  for (const auto& u : manifest.utterances)
    speaker_of[u.utterance_id] = u.speaker_id;

  std::set<std::string> test_union;
  for (size_t i = 0; i < plan.folds.size(); ++i) {
    const Fold& f = plan.folds[i];
    std::set<std::string> seen;
    auto check_set = [&](const std::vector<std::string>& ids,
                         const char* which) {
      for (const auto& id : ids) {
        if (!all_ids.count(id))
          throw ValidationError("fold " + std::to_string(i) + " " + which +
                                " references unknown utterance " + id);
        if (!seen.insert(id).second)
          throw ValidationError("fold " + std::to_string(i) +
                                ": utterance " + id +
                                " appears in more than one set");
      }
    };
    check_set(f.train_ids, "train");
    check_set(f.validation_ids, "validation");
    check_set(f.test_ids, "test");
    if (seen.size() != all_ids.size())
      throw ValidationError("fold " + std::to_string(i) +
                            " does not cover the manifest (" +
                            std::to_string(seen.size()) + " of " +
                            std::to_string(all_ids.size()) + ")");

    if (plan.strategy == SplitStrategy::kSpeakerKfold) {
      std::set<std::string> tr, va, te;
      for (const auto& id : f.train_ids) tr.insert(speaker_of[id]);
      for (const auto& id : f.validation_ids) va.insert(speaker_of[id]);
      for (const auto& id : f.test_ids) te.insert(speaker_of[id]);
      for (const auto& s : tr)
        if (va.count(s) || te.count(s))
          throw ValidationError("fold " + std::to_string(i) + ": speaker " +
                                s + " crosses sets");
      for (const auto& s : va)
        if (te.count(s))
          throw ValidationError("fold " + std::to_string(i) + ": speaker " +
                                s + " crosses sets");
      for (const auto& id : f.test_ids)
        if (!test_union.insert(id).second)
          throw ValidationError("utterance " + id +
                                " is a test item in two folds");
    }
  }
  if (plan.strategy == SplitStrategy::kSpeakerKfold &&
      test_union.size() != all_ids.size())
    throw ValidationError("union of fold test sets does not cover manifest");
}

void write_split(const SplitPlan& plan, const std::string& path) {
  json j;
  j["strategy"] = plan.strategy == SplitStrategy::kSpeakerKfold
                      ? "speaker_kfold"
                      : "fixed_train_test";
  j["seed"] = plan.seed;
  j["folds"] = json::array();
  for (const auto& f : plan.folds) {
    json jf;
    jf["train"] = f.train_ids;
    jf["validation"] = f.validation_ids;
    jf["test"] = f.test_ids;
    j["folds"].push_back(jf);
  }
  std::ofstream out(path);
  if (!out) throw FatalError("cannot write split plan: " + path);
  out << j.dump(2) << "\n";
}

SplitPlan read_split(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FatalError("missing file: " + path);
  json j;
  in >> j;
  SplitPlan plan;
  plan.strategy = j.at("strategy").get<std::string>() == "speaker_kfold"
                      ? SplitStrategy::kSpeakerKfold
                      : SplitStrategy::kFixedTrainTest;
  plan.seed = j.value("seed", 0ull);
  for (const auto& jf : j.at("folds")) {
    Fold f;
    f.train_ids = jf.at("train").get<std::vector<std::string>>();
    f.validation_ids = jf.at("validation").get<std::vector<std::string>>();
    f.test_ids = jf.at("test").get<std::vector<std::string>>();
    plan.folds.push_back(std::move(f));
  }
  return plan;
}

Fold carve_validation(const Fold& fold, const DatasetManifest& manifest,
                      double validation_fraction, uint64_t seed,
                      bool by_speaker) {
  if (!fold.validation_ids.empty()) return fold;
  Fold out;
  out.test_ids = fold.test_ids;

  if (by_speaker) {
    std::vector<std::string> speakers;
    std::set<std::string> seen;
    for (const auto& id : fold.train_ids) {
      const auto& spk = manifest.by_id(id).speaker_id;
      if (seen.insert(spk).second) speakers.push_back(spk);
    }
    Rng rng(seed);
    rng.shuffle(speakers);
    const int n_val = validation_speaker_count(
        validation_fraction, static_cast<int>(speakers.size()));
    std::set<std::string> val_spk(speakers.begin(), speakers.begin() + n_val);
    for (const auto& id : fold.train_ids) {
      if (val_spk.count(manifest.by_id(id).speaker_id))
        out.validation_ids.push_back(id);
      else
        out.train_ids.push_back(id);
    }
  } else {
    std::vector<std::string> ids = fold.train_ids;
    Rng rng(seed);
    rng.shuffle(ids);
    const int n_val = std::clamp(
        static_cast<int>(std::lround(validation_fraction * ids.size())), 1,
        static_cast<int>(ids.size()) - 1);
    out.validation_ids.assign(ids.begin(), ids.begin() + n_val);
    out.train_ids.assign(ids.begin() + n_val, ids.end());
    std::sort(out.validation_ids.begin(), out.validation_ids.end());
    std::sort(out.train_ids.begin(), out.train_ids.end());
  }
  if (out.validation_ids.empty())
    log_warn("validation carve produced an empty set (too few speakers)");
  return out;
}

}  // namespace pronscore
