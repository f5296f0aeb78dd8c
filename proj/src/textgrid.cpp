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

#include "cskit/textgrid.hpp"

#include <cstdlib>
#include <optional>

#include "cskit/errors.hpp"

namespace cskit {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_lines(const std::string& content) {
  std::vector<std::string> lines;
  std::string cur;
  size_t start = 0;
  // strip a UTF-8 BOM if present
  if (content.size() >= 3 && content.compare(0, 3, "\xEF\xBB\xBF") == 0) start = 3;
  for (size_t i = start; i < content.size(); ++i) {
    if (content[i] == '\n') {
      lines.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(content[i]);
    }
  }
  lines.push_back(trim(cur));
  return lines;
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}

// Cursor over trimmed lines, skipping blanks.
class LineCursor {
 public:
  explicit LineCursor(std::vector<std::string> lines) : lines_(std::move(lines)) {}

  bool done() {
    skip_blank();
    return pos_ >= lines_.size();
  }

  const std::string& peek() {
    skip_blank();
    if (pos_ >= lines_.size()) throw ParseError("textgrid: unexpected end of file");
    return lines_[pos_];
  }

  std::string next() {
    const std::string line = peek();
    ++pos_;
    return line;
  }

 private:
  void skip_blank() {
    while (pos_ < lines_.size() && lines_[pos_].empty()) ++pos_;
  }

  std::vector<std::string> lines_;
  size_t pos_ = 0;
};

// "key = value" where key may contain spaces ("intervals: size").
std::optional<std::string> key_value(const std::string& line, const std::string& key) {
  if (!starts_with(line, key)) return std::nullopt;
  std::string rest = trim(line.substr(key.size()));
  if (rest.empty() || rest[0] != '=') return std::nullopt;
  return trim(rest.substr(1));
}

double parse_number(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  if (t.empty()) throw ParseError("textgrid: empty number for " + what);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end == nullptr || *end != '\0') {
    throw ParseError("textgrid: malformed number for " + what + ": \"" + t + "\"");
  }
  return v;
}

// Praat quotes strings with '"' and doubles embedded quotes.
std::string parse_quoted(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  if (t.size() < 2 || t.front() != '"' || t.back() != '"') {
    throw ParseError("textgrid: expected quoted string for " + what + ": \"" + t + "\"");
  }
  std::string inner = t.substr(1, t.size() - 2);
  std::string out;
  for (size_t i = 0; i < inner.size(); ++i) {
    if (inner[i] == '"') {
      if (i + 1 < inner.size() && inner[i + 1] == '"') {
        out.push_back('"');
        ++i;
      } else {
        throw ParseError("textgrid: stray quote inside " + what);
      }
    } else {
      out.push_back(inner[i]);
    }
  }
  return out;
}

std::string expect_value(LineCursor& cur, const std::string& key) {
  const std::string line = cur.next();
  auto v = key_value(line, key);
  if (!v) {
    throw ParseError("textgrid: expected \"" + key + " = ...\", got \"" + line + "\"");
  }
  return *v;
}

long parse_count(const std::string& text, const std::string& what) {
  const double v = parse_number(text, what);
  if (v < 0 || v != static_cast<double>(static_cast<long>(v))) {
    throw ParseError("textgrid: bad count for " + what);
  }
  return static_cast<long>(v);
}

}  // namespace

std::vector<WordAlignment> parse_textgrid(const std::string& content, Lang language) {
  LineCursor cur(split_lines(content));

  if (cur.done()) throw ParseError("textgrid: empty file");
  if (parse_quoted(expect_value(cur, "File type"), "File type") != "ooTextFile") {
    throw ParseError("textgrid: not an ooTextFile (only the long form is supported)");
  }
  if (parse_quoted(expect_value(cur, "Object class"), "Object class") != "TextGrid") {
    throw ParseError("textgrid: object class is not TextGrid");
  }

  // Scan for item blocks; everything between them (file-level xmin/xmax,
  // "tiers? <exists>", size) is irrelevant here.
  while (!cur.done()) {
    const std::string line = cur.next();
    if (!starts_with(line, "item [") || line == "item []:") continue;

    const std::string klass = parse_quoted(expect_value(cur, "class"), "class");
    const std::string name = parse_quoted(expect_value(cur, "name"), "name");
    if (klass != "IntervalTier" || name != "words") continue;

    expect_value(cur, "xmin");
    expect_value(cur, "xmax");
    const long n = parse_count(expect_value(cur, "intervals: size"), "intervals: size");

    std::vector<WordAlignment> words;
    for (long k = 1; k <= n; ++k) {
      const std::string head = cur.next();
      if (!starts_with(head, "intervals [")) {
        throw ParseError("textgrid: expected interval " + std::to_string(k));
      }
      const double xmin = parse_number(expect_value(cur, "xmin"), "interval xmin");
      const double xmax = parse_number(expect_value(cur, "xmax"), "interval xmax");
      const std::string text = parse_quoted(expect_value(cur, "text"), "interval text");
      if (xmin >= xmax) {
        throw ParseError("textgrid: interval " + std::to_string(k) +
                         " has xmin >= xmax");
      }
      if (!text.empty()) {
        words.push_back(WordAlignment{text, xmin, xmax, language});
      }
    }
    return words;
  }
  throw ParseError("textgrid: no interval tier named \"words\"");
}

}  // namespace cskit
