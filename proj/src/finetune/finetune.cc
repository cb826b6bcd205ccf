// src/finetune/finetune.cc

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

#include "pronscore/finetune/finetune.h"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>

#include <json.hpp>

#include "pronscore/common/error.h"
#include "pronscore/common/log.h"
#include "pronscore/common/rng.h"
#include "pronscore/common/wav.h"
#include "pronscore/finetune/wer.h"
#include "pronscore/nn/adam.h"
#include "pronscore/nn/ctc.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace pronscore {

namespace {

struct Example {
  std::string utterance_id;
  Matrix windows;           // window x T
  std::vector<int> labels;  // vocabulary indices, no blanks
  std::string reference;    // vocabulary-normalized transcript
};

std::vector<Example> load_examples(const TinyEncoder& encoder,
                                   const DatasetManifest& manifest,
                                   const std::vector<std::string>& ids,
                                   const LetterVocabulary& vocab,
                                   int* skipped) {
  const FrameLayout layout = frame_layout(encoder.spec());
  std::vector<Example> out;
  for (const auto& id : ids) {
    const ScoredUtterance& u = manifest.by_id(id);
    Example ex;
    ex.utterance_id = id;
    const Waveform wav = read_wav(u.audio_path);
    ex.windows = frame_signal(wav.samples, layout);
    ex.labels = vocab.encode(u.transcript);
    ex.reference = vocab.decode(ex.labels);
    if (!nn::ctc_alignment_feasible(static_cast<int>(ex.windows.cols()),
                                    ex.labels)) {
      log_warn("utterance " + id + ": transcript too long for " +
               std::to_string(ex.windows.cols()) + " frames, skipped");
      if (skipped != nullptr) ++(*skipped);
      continue;
    }
    out.push_back(std::move(ex));
  }
  return out;
}

double mean_ctc_loss(const TinyEncoder& encoder,
                     const std::vector<Example>& examples, int blank) {
  double total = 0.0;
  for (const auto& ex : examples) {
    nn::Tape tape;
    auto fwd = encoder.forward(tape, ex.windows, true);
    total += nn::ctc_loss_value(tape.value(fwd.logits), ex.labels, blank,
                                nullptr);
  }
  return examples.empty() ? 0.0 : total / examples.size();
}

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
  return buf;
}

}  // namespace

double learning_rate_at(const FinetuneConfig& config, long long step) {
  if (config.warmup_steps > 0 && step <= config.warmup_steps)
    return config.peak_learning_rate * static_cast<double>(step) /
           static_cast<double>(config.warmup_steps);
  if (config.post_warmup == FinetuneConfig::PostWarmup::kConstant)
    return config.peak_learning_rate;
  const double span =
      static_cast<double>(config.total_steps - config.warmup_steps);
  if (span <= 0) return config.peak_learning_rate;
  const double left =
      static_cast<double>(config.total_steps - step) / span;
  return config.peak_learning_rate * std::max(0.0, left);
}

FinetuneResult finetune(TinyEncoder& encoder,
                        const DatasetManifest& train_manifest,
                        const std::vector<std::string>& train_ids,
                        const std::vector<std::string>& dev_ids,
                        const LetterVocabulary& vocab,
                        const FinetuneConfig& config,
                        const std::string& checkpoint_dir) {
  if (dev_ids.empty()) throw FatalError("finetune: dev set is empty");
  if (!encoder.has_ctc_head())
    encoder.attach_ctc_head(vocab.size(), config.seed);
  if (encoder.vocab_size() != vocab.size())
    throw ValidationError("ctc head width " +
                          std::to_string(encoder.vocab_size()) +
                          " does not match vocabulary size " +
                          std::to_string(vocab.size()));

  fs::create_directories(checkpoint_dir);
  vocab.save((fs::path(checkpoint_dir) / "vocab.txt").string());
  {
    json snapshot;
    snapshot["total_steps"] = config.total_steps;
    snapshot["batch_size"] = config.batch_size;
    snapshot["peak_learning_rate"] = config.peak_learning_rate;
    snapshot["warmup_steps"] = config.warmup_steps;
    snapshot["checkpoint_interval"] = config.checkpoint_interval;
    snapshot["frozen_components"] = config.frozen_components;
    snapshot["post_warmup"] =
        config.post_warmup == FinetuneConfig::PostWarmup::kConstant
            ? "constant"
            : "linear_decay";
    snapshot["seed"] = config.seed;
    std::ofstream out(fs::path(checkpoint_dir) / "config.json");
    out << snapshot.dump(2) << "\n";
  }

  FinetuneResult result;
  std::vector<Example> train = load_examples(encoder, train_manifest,
                                             train_ids, vocab,
                                             &result.skipped_utterances);
  if (train.empty()) throw FatalError("finetune: no trainable utterances");

  // Snapshot of frozen weights so the invariant is checkable and the
  // optimizer never sees them.
  nn::Adam optimizer;
  optimizer.register_parameters(
      encoder.trainable_parameters(config.frozen_components));

  result.initial_loss = mean_ctc_loss(encoder, train, vocab.blank_index);

  std::ofstream wer_log(fs::path(checkpoint_dir) / "wer_log.jsonl",
                        std::ios::app);
  const std::string best_path =
      (fs::path(checkpoint_dir) / "ckpt_best.bin").string();
  const std::string last_path =
      (fs::path(checkpoint_dir) / "ckpt_last.bin").string();

  double best_wer = std::numeric_limits<double>::infinity();
  result.best.step = 0;

  auto evaluate = [&](long long step) {
    const double wer =
        dev_wer(encoder, train_manifest, dev_ids, vocab);
    wer_log << json({{"step", step}, {"wer", wer},
                     {"timestamp", timestamp_utc()}})
                   .dump()
            << "\n";
    wer_log.flush();
    CheckpointRecord rec;
    rec.step = step;
    rec.dev_wer = wer;
    if (wer < best_wer) {
      best_wer = wer;
      encoder.save(best_path, json({{"step", step}, {"dev_wer", wer}}).dump());
      rec.path = best_path;
      result.best = rec;
    }
    result.evaluations.push_back(rec);
  };

  Rng rng(config.seed);
  std::vector<size_t> order(train.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);
  size_t cursor = 0;

  double interval_loss = 0.0;
  long long interval_count = 0;

  for (long long step = 1; step <= config.total_steps; ++step) {
    optimizer.zero_grad();
    double batch_loss = 0.0;
    const int b = std::min<int>(config.batch_size,
                                static_cast<int>(train.size()));
    for (int k = 0; k < b; ++k) {
      if (cursor >= order.size()) {
        rng.shuffle(order);
        cursor = 0;
      }
      const Example& ex = train[order[cursor++]];
      nn::Tape tape;
      auto fwd = encoder.forward(tape, ex.windows, true);
      nn::Tape::Var loss =
          nn::ctc_loss(tape, fwd.logits, ex.labels, vocab.blank_index);
      nn::Tape::Var scaled = tape.scale(loss, 1.0 / b);
      tape.backward(scaled);
      batch_loss += tape.value(loss)(0, 0) / b;
    }

    if (!std::isfinite(batch_loss)) {
      log_warn("finetune diverged at step " + std::to_string(step) +
               " (non-finite loss); aborting with last finite checkpoint");
      result.aborted = true;
      break;
    }

    optimizer.step(learning_rate_at(config, step));
    interval_loss += batch_loss;
    ++interval_count;

    if (step % config.checkpoint_interval == 0 || step == config.total_steps) {
      evaluate(step);
      result.final_loss = interval_loss / std::max(1ll, interval_count);
      interval_loss = 0.0;
      interval_count = 0;
    }
  }
  if (interval_count > 0)
    result.final_loss = interval_loss / interval_count;
  if (result.evaluations.empty()) evaluate(config.total_steps);

  encoder.save(last_path, json({{"step", config.total_steps}}).dump());
  return result;
}

double dev_wer(const TinyEncoder& encoder, const DatasetManifest& manifest,
               const std::vector<std::string>& dev_ids,
               const LetterVocabulary& vocab) {
  if (dev_ids.empty()) throw FatalError("dev_wer: dev set is empty");
  WerAccumulator acc;
  for (const auto& id : dev_ids) {
    const ScoredUtterance& u = manifest.by_id(id);
    const Waveform wav = read_wav(u.audio_path);
    const Matrix logits = encoder.logits(wav.samples);
    const auto path = nn::ctc_greedy_path(logits);
    const auto collapsed = nn::ctc_collapse(path, vocab.blank_index);
    const std::string hyp = vocab.decode(collapsed);
    const std::string ref = vocab.decode(vocab.encode(u.transcript));
    acc.add(ref, hyp);
  }
  return acc.wer();
}

}  // namespace pronscore
