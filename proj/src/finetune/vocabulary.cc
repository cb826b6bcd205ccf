// src/finetune/vocabulary.cc

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

#include "pronscore/finetune/vocabulary.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>

#include "pronscore/common/error.h"
#include "pronscore/common/log.h"

namespace pronscore {

namespace {
constexpr const char* kBlankToken = "<blank>";
constexpr const char* kSpaceToken = "<space>";
constexpr const char* kApostropheToken = "'";
}  // namespace

LetterVocabulary build_vocabulary(
    const std::vector<std::string>& transcripts) {
  bool any_content = false;
  std::set<char> letters;
  for (const auto& t : transcripts) {
    for (char raw : t) {
      const char c =
          static_cast<char>(std::toupper(static_cast<unsigned char>(raw)));
      if (c >= 'A' && c <= 'Z') {
        letters.insert(c);
        any_content = true;
      } else if (c == '\'' || c == ' ') {
        any_content = true;
      }
    }
  }
  if (transcripts.empty() || !any_content)
    throw ValidationError("cannot build vocabulary from empty transcripts");

  LetterVocabulary vocab;
  vocab.tokens.push_back(kBlankToken);
  vocab.blank_index = 0;
  for (char c : letters) vocab.tokens.push_back(std::string(1, c));
  vocab.apostrophe_index = static_cast<int>(vocab.tokens.size());
  vocab.tokens.push_back(kApostropheToken);
  vocab.space_index = static_cast<int>(vocab.tokens.size());
  vocab.tokens.push_back(kSpaceToken);
  return vocab;
}

std::vector<int> LetterVocabulary::encode(const std::string& transcript) const {
  std::vector<int> out;
  int stripped = 0;
  for (char raw : transcript) {
    const char c =
        static_cast<char>(std::toupper(static_cast<unsigned char>(raw)));
    if (c == ' ') {
      out.push_back(space_index);
      continue;
    }
    if (c == '\'') {
      out.push_back(apostrophe_index);
      continue;
    }
    const std::string tok(1, c);
    auto it = std::find(tokens.begin(), tokens.end(), tok);
    if (it == tokens.end()) {
      ++stripped;
      continue;
    }
    out.push_back(static_cast<int>(it - tokens.begin()));
  }
  if (stripped > 0)
    log_warn("stripped " + std::to_string(stripped) +
             " out-of-vocabulary characters from transcript");
  return out;
}

std::string LetterVocabulary::decode(const std::vector<int>& indices) const {
  std::string out;
  for (int idx : indices) {
    if (idx < 0 || idx >= size())
      throw ValidationError("token index " + std::to_string(idx) +
                            " out of range for vocabulary of " +
                            std::to_string(size()));
    if (idx == blank_index) continue;
    if (idx == space_index) {
      out.push_back(' ');
    } else if (idx == apostrophe_index) {
      out.push_back('\'');
    } else {
      out += tokens[idx];
    }
  }
  return out;
}

void LetterVocabulary::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw FatalError("cannot write vocabulary: " + path);
  for (const auto& t : tokens) out << t << "\n";
}

LetterVocabulary LetterVocabulary::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FatalError("missing vocabulary file: " + path);
  LetterVocabulary vocab;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line == kBlankToken) vocab.blank_index = vocab.size();
    if (line == kSpaceToken) vocab.space_index = vocab.size();
    if (line == kApostropheToken) vocab.apostrophe_index = vocab.size();
    vocab.tokens.push_back(line);
  }
  if (vocab.blank_index < 0 || vocab.space_index < 0 ||
      vocab.apostrophe_index < 0)
    throw ValidationError("vocabulary file " + path +
                          " lacks blank/space/apostrophe tokens");
  return vocab;
}

}  // namespace pronscore
