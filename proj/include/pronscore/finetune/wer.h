// include/pronscore/finetune/wer.h

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

#ifndef PRONSCORE_FINETUNE_WER_H_
#define PRONSCORE_FINETUNE_WER_H_

#include <string>
#include <vector>

namespace pronscore {

std::vector<std::string> split_words(const std::string& text);

// Word-level Levenshtein distance.
int edit_distance(const std::vector<std::string>& ref,
                  const std::vector<std::string>& hyp);

// Accumulates edit distance and reference length over utterance pairs;
// WER = total distance / total reference words.
class WerAccumulator {
 public:
  void add(const std::string& reference, const std::string& hypothesis);
  double wer() const;
  long long reference_words() const { return ref_words_; }

 private:
  long long edits_ = 0;
  long long ref_words_ = 0;
};

}  // namespace pronscore

#endif  // PRONSCORE_FINETUNE_WER_H_
