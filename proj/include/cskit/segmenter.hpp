// Copyright (c) 2026 The cskit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CSKIT_SEGMENTER_HPP_
#define CSKIT_SEGMENTER_HPP_

#include <string>
#include <unordered_set>
#include <vector>

#include "cskit/common.hpp"

namespace cskit {

// Word list for forward maximum matching. Closed under single characters:
// every character of every entry is itself an entry, so segmentation always
// makes progress.
struct Lexicon {
  std::unordered_set<std::string> entries;
  int max_word_len = 1;  // in characters

  bool contains(const std::string& word) const { return entries.count(word) > 0; }
};

// UTF-8, one word per line; an optional tab-separated frequency column is
// ignored. Missing singletons are added to close the lexicon.
Lexicon load_lexicon(const std::string& path);
Lexicon make_lexicon(const std::vector<std::string>& words);

struct SegmentedWord {
  std::string word;
  int first_char = 0;  // inclusive indices into the character sequence
  int last_char = 0;
};

// Forward maximum matching: at each position take the longest lexicon entry.
// Characters absent from the lexicon fall out as singleton words, so the
// output always partitions the input.
std::vector<SegmentedWord> segment(const std::string& text, const Lexicon& lex);

// Aggregates per-character alignments into per-word spans: each word runs
// from its first character's start to its last character's end.
std::vector<WordAlignment> word_durations(
    const std::vector<SegmentedWord>& words,
    const std::vector<WordAlignment>& char_aligns);

}  // namespace cskit

#endif  // CSKIT_SEGMENTER_HPP_
