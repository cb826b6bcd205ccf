// include/pronscore/dataset/split.h

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

#ifndef PRONSCORE_DATASET_SPLIT_H_
#define PRONSCORE_DATASET_SPLIT_H_

#include <string>
#include <vector>

#include "pronscore/dataset/manifest.h"

namespace pronscore {

struct Fold {
  std::vector<std::string> train_ids;
  std::vector<std::string> validation_ids;
  std::vector<std::string> test_ids;
};

enum class SplitStrategy { kSpeakerKfold, kFixedTrainTest };

struct SplitPlan {
  SplitStrategy strategy = SplitStrategy::kSpeakerKfold;
  std::vector<Fold> folds;
  uint64_t seed = 0;
};

// Shuffles speakers with the given seed, partitions them into k near-equal
// groups, and builds fold i with group i as test, a validation_fraction
// share of the remaining speakers as validation, and the rest as training.
// No speaker appears in more than one of the three sets of a fold.
SplitPlan make_speaker_kfold(const DatasetManifest& manifest, int k,
                             double validation_fraction, uint64_t seed);

// Single-fold plan. With by_speaker the split is speaker-disjoint. When the
// manifest carries a canonical train/test assignment it is used verbatim
// and train_fraction/seed are ignored. Validation is left empty; training
// drivers carve it from the train side when they need one.
SplitPlan make_fixed_split(const DatasetManifest& manifest,
                           double train_fraction, uint64_t seed,
                           bool by_speaker);

// Invariant check: within each fold the three sets are pairwise disjoint,
// cover the manifest, and (for speaker strategies) stay speaker-disjoint.
void validate_split(const SplitPlan& plan, const DatasetManifest& manifest);

void write_split(const SplitPlan& plan, const std::string& path);
SplitPlan read_split(const std::string& path);

// Moves a validation_fraction share of the fold's training speakers (or
// utterances, when by_speaker is false) into the validation set. Used for
// plans whose folds come without one.
Fold carve_validation(const Fold& fold, const DatasetManifest& manifest,
                      double validation_fraction, uint64_t seed,
                      bool by_speaker);

}  // namespace pronscore

#endif  // PRONSCORE_DATASET_SPLIT_H_
