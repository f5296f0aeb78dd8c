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

#include "cskit/errors.hpp"
#include "cskit/io.hpp"
#include "cskit/textgrid.hpp"
#include "test_util.hpp"

using namespace cskit;

namespace {

std::string fixture(const std::string& name) {
  return read_file_bytes(cskit_test::data_path("textgrid/" + name));
}

}  // namespace

TEST_CASE("parse_textgrid: hand-audited 3-interval fixture") {
  // Oracle: the literal numbers in tests/data/textgrid/basic.TextGrid.
  const auto words = parse_textgrid(fixture("basic.TextGrid"), Lang::kEn);
  REQUIRE(words.size() == 3);
  CHECK(words[0].word == "hello");
  CHECK(words[0].start_s == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(words[0].end_s == doctest::Approx(0.95).epsilon(1e-12));
  CHECK(words[1].word == "brave");
  CHECK(words[1].start_s == doctest::Approx(0.95).epsilon(1e-12));
  CHECK(words[1].end_s == doctest::Approx(1.52).epsilon(1e-12));
  CHECK(words[2].word == "world");
  CHECK(words[2].start_s == doctest::Approx(1.52).epsilon(1e-12));
  CHECK(words[2].end_s == doctest::Approx(2.1).epsilon(1e-12));
  CHECK(words[0].language == Lang::kEn);

  // alignment monotonicity on everything the parser returns
  for (size_t i = 1; i < words.size(); ++i) {
    CHECK(words[i].start_s >= words[i - 1].end_s - kOverlapEpsilonS);
  }
}

TEST_CASE("parse_textgrid: silence intervals dropped") {
  const std::string content =
      "File type = \"ooTextFile\"\n"
      "Object class = \"TextGrid\"\n"
      "\n"
      "xmin = 0\n"
      "xmax = 0.9\n"
      "tiers? <exists>\n"
      "size = 1\n"
      "item []:\n"
      "  item [1]:\n"
      "    class = \"IntervalTier\"\n"
      "    name = \"words\"\n"
      "    xmin = 0\n"
      "    xmax = 0.9\n"
      "    intervals: size = 2\n"
      "    intervals [1]:\n"
      "      xmin = 0\n"
      "      xmax = 0.5\n"
      "      text = \"hello\"\n"
      "    intervals [2]:\n"
      "      xmin = 0.5\n"
      "      xmax = 0.9\n"
      "      text = \"\"\n";
  const auto words = parse_textgrid(content, Lang::kEn);
  REQUIRE(words.size() == 1);
  CHECK(words[0].word == "hello");
  CHECK(words[0].start_s == 0.0);
  CHECK(words[0].end_s == 0.5);
}

TEST_CASE("parse_textgrid: empty tier gives no alignments") {
  const std::string content =
      "File type = \"ooTextFile\"\n"
      "Object class = \"TextGrid\"\n"
      "item []:\n"
      "  item [1]:\n"
      "    class = \"IntervalTier\"\n"
      "    name = \"words\"\n"
      "    xmin = 0\n"
      "    xmax = 1\n"
      "    intervals: size = 0\n";
  CHECK(parse_textgrid(content, Lang::kZh).empty());
}

TEST_CASE("parse_textgrid: escaped quotes in labels") {
  const std::string content =
      "File type = \"ooTextFile\"\n"
      "Object class = \"TextGrid\"\n"
      "item []:\n"
      "  item [1]:\n"
      "    class = \"IntervalTier\"\n"
      "    name = \"words\"\n"
      "    xmin = 0\n"
      "    xmax = 1\n"
      "    intervals: size = 1\n"
      "    intervals [1]:\n"
      "      xmin = 0\n"
      "      xmax = 1\n"
      "      text = \"say \"\"hi\"\"\"\n";
  const auto words = parse_textgrid(content, Lang::kEn);
  REQUIRE(words.size() == 1);
  CHECK(words[0].word == "say \"hi\"");
}

TEST_CASE("parse_textgrid: malformed inputs raise ParseError") {
  SUBCASE("missing words tier") {
    CHECK_THROWS_AS(parse_textgrid(fixture("missing_words.TextGrid"), Lang::kEn),
                    ParseError);
  }
  SUBCASE("interval with xmin >= xmax") {
    CHECK_THROWS_AS(parse_textgrid(fixture("bad_interval.TextGrid"), Lang::kEn),
                    ParseError);
  }
  SUBCASE("short form rejected") {
    CHECK_THROWS_AS(parse_textgrid(fixture("short_form.TextGrid"), Lang::kEn),
                    ParseError);
  }
  SUBCASE("wrong object class") {
    CHECK_THROWS_AS(parse_textgrid(fixture("wrong_class.TextGrid"), Lang::kEn),
                    ParseError);
  }
  SUBCASE("truncated file") {
    CHECK_THROWS_AS(parse_textgrid(fixture("truncated.TextGrid"), Lang::kEn),
                    ParseError);
  }
  SUBCASE("empty input") {
    CHECK_THROWS_AS(parse_textgrid("", Lang::kEn), ParseError);
  }
  SUBCASE("malformed number") {
    const std::string content =
        "File type = \"ooTextFile\"\n"
        "Object class = \"TextGrid\"\n"
        "item []:\n"
        "  item [1]:\n"
        "    class = \"IntervalTier\"\n"
        "    name = \"words\"\n"
        "    xmin = 0\n"
        "    xmax = 1\n"
        "    intervals: size = 1\n"
        "    intervals [1]:\n"
        "      xmin = zero\n"
        "      xmax = 1\n"
        "      text = \"x\"\n";
    CHECK_THROWS_AS(parse_textgrid(content, Lang::kEn), ParseError);
  }
}
