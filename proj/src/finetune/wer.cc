// src/finetune/wer.cc

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

#include "pronscore/finetune/wer.h"

#include <algorithm>
#include <sstream>

namespace pronscore {

std::vector<std::string> split_words(const std::string& text) {
  std::vector<std::string> words;
  std::istringstream ss(text);
  std::string w;
  while (ss >> w) words.push_back(w);
  return words;
}

int edit_distance(const std::vector<std::string>& ref,
                  const std::vector<std::string>& hyp) {
  const size_t m = ref.size(), n = hyp.size();
  std::vector<int> prev(n + 1), cur(n + 1);
  for (size_t j = 0; j <= n; ++j) prev[j] = static_cast<int>(j);
  for (size_t i = 1; i <= m; ++i) {
    cur[0] = static_cast<int>(i);
    for (size_t j = 1; j <= n; ++j) {
      const int sub = prev[j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[n];
}

void WerAccumulator::add(const std::string& reference,
                         const std::string& hypothesis) {
  const auto ref = split_words(reference);
  const auto hyp = split_words(hypothesis);
  edits_ += edit_distance(ref, hyp);
  ref_words_ += static_cast<long long>(ref.size());
}

double WerAccumulator::wer() const {
  if (ref_words_ == 0) return 0.0;
  return static_cast<double>(edits_) / static_cast<double>(ref_words_);
}

}  // namespace pronscore
