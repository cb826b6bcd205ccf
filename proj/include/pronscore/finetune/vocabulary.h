// include/pronscore/finetune/vocabulary.h

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

#ifndef PRONSCORE_FINETUNE_VOCABULARY_H_
#define PRONSCORE_FINETUNE_VOCABULARY_H_

#include <string>
#include <vector>

namespace pronscore {

// CTC output alphabet: blank, the distinct (upper-cased) letters of the
// corpus transcripts, apostrophe, space — in that fixed order. The file
// form is one token per line, index = line number, with "<blank>" and
// "<space>" as visible escapes.
struct LetterVocabulary {
  std::vector<std::string> tokens;
  int blank_index = -1;
  int space_index = -1;
  int apostrophe_index = -1;

  int size() const { return static_cast<int>(tokens.size()); }

  // Upper-cases, maps letters/space/apostrophe to indices; characters
  // outside the alphabet are stripped with a warning.
  std::vector<int> encode(const std::string& transcript) const;
  std::string decode(const std::vector<int>& indices) const;

  void save(const std::string& path) const;
  static LetterVocabulary load(const std::string& path);
};

LetterVocabulary build_vocabulary(const std::vector<std::string>& transcripts);

}  // namespace pronscore

#endif  // PRONSCORE_FINETUNE_VOCABULARY_H_
