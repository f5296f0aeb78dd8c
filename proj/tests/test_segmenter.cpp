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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "cskit/errors.hpp"
#include "cskit/io.hpp"
#include "cskit/segmenter.hpp"
#include "cskit/text.hpp"
#include "test_util.hpp"

using namespace cskit;

namespace {

// Independent oracle: longest-prefix match via naive substring set lookups.
std::vector<std::string> naive_fmm(const std::string& text,
                                   const std::set<std::string>& entries) {
  const std::vector<std::string> chars = utf8_chars(text);
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos < chars.size()) {
    std::string best = chars[pos];  // OOV fallback: the character itself
    size_t best_len = 1;
    std::string cand;
    for (size_t len = 1; len <= chars.size() - pos; ++len) {
      cand += chars[pos + len - 1];
      if (entries.count(cand) > 0 && len > best_len) {
        best = cand;
        best_len = len;
      }
    }
    out.push_back(best);
    pos += best_len;
  }
  return out;
}

}  // namespace

TEST_CASE("load_lexicon: single-character closure") {
  cskit_test::TempDir tmp("lex");
  write_file_bytes(tmp.file("lex.txt"), "我们\n喜欢\n");
  const Lexicon lex = load_lexicon(tmp.file("lex.txt"));
  CHECK(lex.entries.size() == 6);  // 我们 喜欢 我 们 喜 欢
  CHECK(lex.contains("我们"));
  CHECK(lex.contains("我"));
  CHECK(lex.contains("们"));
  CHECK(lex.contains("喜"));
  CHECK(lex.contains("欢"));
  CHECK(lex.max_word_len == 2);
}

TEST_CASE("load_lexicon: empty file") {
  cskit_test::TempDir tmp("lex");
  write_file_bytes(tmp.file("empty.txt"), "");
  const Lexicon lex = load_lexicon(tmp.file("empty.txt"));
  CHECK(lex.entries.empty());
  CHECK(lex.max_word_len == 1);
}

TEST_CASE("load_lexicon: frequency column ignored, missing file raises") {
  cskit_test::TempDir tmp("lex");
  write_file_bytes(tmp.file("freq.txt"), "我们\t123\n喜欢\t4\n");
  const Lexicon lex = load_lexicon(tmp.file("freq.txt"));
  CHECK(lex.contains("我们"));
  CHECK_FALSE(lex.contains("我们\t123"));
  CHECK_THROWS_AS(load_lexicon(tmp.file("nope.txt")), IoError);
}

TEST_CASE("load_lexicon: 10k-line file matches an independent count") {
  // Oracle: distinct words plus their distinct characters, via std::set.
  cskit_test::TempDir tmp("lex");
  const std::vector<std::string> alphabet = utf8_chars("天地人你我他山水日月明星");
  std::mt19937_64 gen(4242);
  std::string file;
  std::set<std::string> expected;
  for (int i = 0; i < 10000; ++i) {
    const int len = 1 + static_cast<int>(gen() % 3);
    std::string word;
    for (int j = 0; j < len; ++j) word += alphabet[gen() % alphabet.size()];
    file += word;
    file += '\n';
    expected.insert(word);
    for (const std::string& c : utf8_chars(word)) expected.insert(c);
  }
  write_file_bytes(tmp.file("big.txt"), file);
  const Lexicon lex = load_lexicon(tmp.file("big.txt"));
  CHECK(lex.entries.size() == expected.size());
}

TEST_CASE("segment: longest match wins") {
  const Lexicon lex = make_lexicon({"我", "我们", "喜", "欢", "喜欢"});
  const auto words = segment("我们喜欢", lex);
  REQUIRE(words.size() == 2);
  CHECK(words[0].word == "我们");
  CHECK(words[0].first_char == 0);
  CHECK(words[0].last_char == 1);
  CHECK(words[1].word == "喜欢");
  CHECK(words[1].first_char == 2);
  CHECK(words[1].last_char == 3);
}

TEST_CASE("segment: singleton and OOV fallback") {
  const Lexicon lex = make_lexicon({"我"});
  SUBCASE("single char") {
    const auto words = segment("我", lex);
    REQUIRE(words.size() == 1);
    CHECK(words[0].word == "我");
  }
  SUBCASE("out-of-vocabulary char becomes its own word") {
    const auto words = segment("我猫", lex);
    REQUIRE(words.size() == 2);
    CHECK(words[1].word == "猫");
  }
  SUBCASE("empty text rejected") {
    CHECK_THROWS_AS(segment("", lex), EmptyInput);
  }
}

TEST_CASE("segment: equals the brute-force longest-prefix oracle") {
  const std::vector<std::string> alphabet = utf8_chars("天地人你我他好大小");
  std::mt19937_64 gen(99);

  std::vector<std::string> lex_words;
  std::set<std::string> entry_set;
  for (int i = 0; i < 40; ++i) {
    const int len = 1 + static_cast<int>(gen() % 4);
    std::string word;
    for (int j = 0; j < len; ++j) word += alphabet[gen() % alphabet.size()];
    lex_words.push_back(word);
  }
  const Lexicon lex = make_lexicon(lex_words);
  for (const std::string& e : lex.entries) entry_set.insert(e);

  for (int trial = 0; trial < 300; ++trial) {
    std::string text;
    for (int j = 0; j < 20; ++j) text += alphabet[gen() % alphabet.size()];
    const auto got = segment(text, lex);
    const auto expected = naive_fmm(text, entry_set);
    REQUIRE(got.size() == expected.size());
    for (size_t i = 0; i < got.size(); ++i) CHECK(got[i].word == expected[i]);
  }
}

TEST_CASE("segment: partition property") {
  const std::vector<std::string> alphabet = utf8_chars("今明天气好不错学生工作");
  std::mt19937_64 gen(7);
  std::vector<std::string> lex_words = {"今天", "明天", "天气", "不错", "学生", "工作"};
  const Lexicon lex = make_lexicon(lex_words);

  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    const int len = 1 + static_cast<int>(gen() % 24);
    for (int j = 0; j < len; ++j) text += alphabet[gen() % alphabet.size()];
    const auto words = segment(text, lex);

    std::string reassembled;
    int expected_first = 0;
    for (const SegmentedWord& w : words) {
      reassembled += w.word;
      CHECK(w.first_char == expected_first);  // spans are gapless and ordered
      expected_first = w.last_char + 1;
    }
    CHECK(reassembled == text);
    CHECK(expected_first == static_cast<int>(utf8_chars(text).size()));
  }
}

TEST_CASE("segment: deterministic") {
  const Lexicon lex = make_lexicon({"今天", "天气"});
  const auto a = segment("今天天气", lex);
  const auto b = segment("今天天气", lex);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].word == b[i].word);
}

TEST_CASE("word_durations: endpoint rule") {
  const std::vector<WordAlignment> chars = {
      {"我", 0.0, 0.2, Lang::kZh},
      {"们", 0.2, 0.5, Lang::kZh},
  };
  const std::vector<SegmentedWord> words = {{"我们", 0, 1}};
  const auto out = word_durations(words, chars);
  REQUIRE(out.size() == 1);
  CHECK(out[0].word == "我们");
  CHECK(out[0].start_s == 0.0);
  CHECK(out[0].end_s == 0.5);
  CHECK(out[0].language == Lang::kZh);
}

TEST_CASE("word_durations: single-character word keeps its span") {
  const std::vector<WordAlignment> chars = {{"好", 0.3, 0.6, Lang::kZh}};
  const auto out = word_durations({{"好", 0, 0}}, chars);
  REQUIRE(out.size() == 1);
  CHECK(out[0].start_s == 0.3);
  CHECK(out[0].end_s == 0.6);
}

TEST_CASE("word_durations: additivity on a gapless sentence") {
  // Sum of word durations equals last end minus first start when the
  // character alignments are gapless.
  std::vector<WordAlignment> chars;
  double t = 0.25;
  const std::vector<std::string> cs = utf8_chars("今天天气好");
  for (const std::string& c : cs) {
    chars.push_back({c, t, t + 0.17, Lang::kZh});
    t += 0.17;
  }
  const Lexicon lex = make_lexicon({"今天", "天气", "好"});
  std::string text;
  for (const std::string& c : cs) text += c;
  const auto words = segment(text, lex);
  const auto outs = word_durations(words, chars);

  double total = 0.0;
  for (const auto& w : outs) total += w.end_s - w.start_s;
  CHECK(total == doctest::Approx(chars.back().end_s - chars.front().start_s)
                     .epsilon(1e-12));
  // monotone and contained in the hull
  for (size_t i = 1; i < outs.size(); ++i) {
    CHECK(outs[i].start_s >= outs[i - 1].end_s - 1e-12);
  }
  CHECK(outs.front().start_s == chars.front().start_s);
  CHECK(outs.back().end_s == chars.back().end_s);
}

TEST_CASE("word_durations: mismatch raises") {
  const std::vector<WordAlignment> chars = {{"我", 0.0, 0.2, Lang::kZh}};
  CHECK_THROWS_AS(word_durations({{"我们", 0, 1}}, chars), AlignmentMismatch);
}
