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

#include "cskit/segmenter.hpp"

#include <algorithm>

#include "cskit/errors.hpp"
#include "cskit/io.hpp"
#include "cskit/text.hpp"

namespace cskit {

namespace {

void insert_with_closure(Lexicon& lex, const std::string& word) {
  const std::vector<std::string> chars = utf8_chars(word);
  if (chars.empty()) return;
  lex.entries.insert(word);
  lex.max_word_len = std::max(lex.max_word_len, static_cast<int>(chars.size()));
  for (const std::string& c : chars) lex.entries.insert(c);
}

}  // namespace

Lexicon make_lexicon(const std::vector<std::string>& words) {
  Lexicon lex;
  for (const std::string& w : words) insert_with_closure(lex, w);
  return lex;
}

Lexicon load_lexicon(const std::string& path) {
  Lexicon lex;
  for (const std::string& line : read_text_lines(path)) {
    const size_t tab = line.find('\t');
    const std::string word = tab == std::string::npos ? line : line.substr(0, tab);
    if (word.empty()) continue;
    insert_with_closure(lex, word);
  }
  return lex;
}

std::vector<SegmentedWord> segment(const std::string& text, const Lexicon& lex) {
  if (text.empty()) throw EmptyInput("segment: empty text");
  const std::vector<std::string> chars = utf8_chars(text);
  const int n = static_cast<int>(chars.size());

  std::vector<SegmentedWord> out;
  int pos = 0;
  while (pos < n) {
    const int max_len = std::min(lex.max_word_len, n - pos);
    int taken = 1;
    std::string word = chars[pos];
    std::string candidate = chars[pos];
    for (int len = 2; len <= max_len; ++len) {
      candidate += chars[pos + len - 1];
      if (lex.contains(candidate)) {
        taken = len;
        word = candidate;
      }
    }
    out.push_back(SegmentedWord{word, pos, pos + taken - 1});
    pos += taken;
  }
  return out;
}

std::vector<WordAlignment> word_durations(
    const std::vector<SegmentedWord>& words,
    const std::vector<WordAlignment>& char_aligns) {
  int covered = 0;
  for (const SegmentedWord& w : words) {
    covered += w.last_char - w.first_char + 1;
  }
  if (covered != static_cast<int>(char_aligns.size())) {
    throw AlignmentMismatch("word_durations: words cover " + std::to_string(covered) +
                            " characters but " + std::to_string(char_aligns.size()) +
                            " alignments were given");
  }
  std::vector<WordAlignment> out;
  out.reserve(words.size());
  for (const SegmentedWord& w : words) {
    if (w.first_char < 0 || w.last_char >= static_cast<int>(char_aligns.size()) ||
        w.first_char > w.last_char) {
      throw AlignmentMismatch("word_durations: span out of range");
    }
    out.push_back(WordAlignment{w.word, char_aligns[w.first_char].start_s,
                                char_aligns[w.last_char].end_s, Lang::kZh});
  }
  return out;
}

}  // namespace cskit
