// include/pronscore/finetune/finetune.h

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

#ifndef PRONSCORE_FINETUNE_FINETUNE_H_
#define PRONSCORE_FINETUNE_FINETUNE_H_

#include <set>
#include <string>
#include <vector>

#include "pronscore/dataset/manifest.h"
#include "pronscore/encoder/tiny_encoder.h"
#include "pronscore/finetune/vocabulary.h"

namespace pronscore {

struct FinetuneConfig {
  long long total_steps = 150000;
  int batch_size = 8;
  double peak_learning_rate = 1e-4;
  long long warmup_steps = 1000;
  std::set<std::string> frozen_components = {"feature_encoder"};
  long long checkpoint_interval = 1000;
  // Post-warmup schedule: hold at peak, or decay linearly to 0 at
  // total_steps.
  enum class PostWarmup { kConstant, kLinearDecay };
  PostWarmup post_warmup = PostWarmup::kConstant;
  uint64_t seed = 0;
};

// Linear warmup from 0 to peak over warmup_steps, then the configured
// post-warmup schedule. Continuous at the warmup boundary.
double learning_rate_at(const FinetuneConfig& config, long long step);

struct CheckpointRecord {
  long long step = 0;
  double dev_wer = 0.0;
  std::string path;
};

struct FinetuneResult {
  CheckpointRecord best;
  double initial_loss = 0.0;  // mean CTC loss over the train set before step 1
  double final_loss = 0.0;    // mean train-batch loss over the last interval
  std::vector<CheckpointRecord> evaluations;
  bool aborted = false;  // loss went non-finite; best retains last finite state
  int skipped_utterances = 0;  // transcripts that cannot align into the frames
};

// CTC adaptation: updates every component except those frozen (the
// convolutional front end by default), with periodic dev-set WER
// evaluation; the checkpoint with the lowest dev WER is kept as `best`.
// checkpoint_dir receives config.json, vocab.txt, wer_log.jsonl and the
// ckpt_best.bin / ckpt_last.bin weights.
FinetuneResult finetune(TinyEncoder& encoder,
                        const DatasetManifest& train_manifest,
                        const std::vector<std::string>& train_ids,
                        const std::vector<std::string>& dev_ids,
                        const LetterVocabulary& vocab,
                        const FinetuneConfig& config,
                        const std::string& checkpoint_dir);

// Greedy CTC decoding per utterance; WER is total edit distance over total
// reference words. References are vocabulary-normalized before comparison.
double dev_wer(const TinyEncoder& encoder, const DatasetManifest& manifest,
               const std::vector<std::string>& dev_ids,
               const LetterVocabulary& vocab);

}  // namespace pronscore

#endif  // PRONSCORE_FINETUNE_FINETUNE_H_
