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

#include "cskit/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "cskit/errors.hpp"
#include "cskit/io.hpp"
#include "cskit/text.hpp"

namespace cskit {

namespace {

bool is_ascii_punct(uint32_t cp) {
  switch (cp) {
    case '.': case ',': case '?': case '!': case ';': case ':':
    case '"': case '\'': case '(': case ')':
      return true;
    default:
      return false;
  }
}

bool is_fullwidth_punct(uint32_t cp) {
  switch (cp) {
    case 0x3001:  // 、
    case 0x3002:  // 。
    case 0xFF01:  // ！
    case 0xFF1F:  // ？
    case 0xFF1B:  // ；
    case 0xFF1A:  // ：
    case 0xFF0C:  // ，
    case 0xFF08:  // （
    case 0xFF09:  // ）
    case 0x201C: case 0x201D:  // “ ”
    case 0x2018: case 0x2019:  // ‘ ’
    case 0x3010: case 0x3011:  // 【 】
      return true;
    default:
      return false;
  }
}

bool is_space_cp(uint32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == 0x3000;
}

uint32_t ascii_lower(uint32_t cp) {
  return (cp >= 'A' && cp <= 'Z') ? cp + 32 : cp;
}

std::vector<std::string> tokenize_en(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  size_t pos = 0;
  while (pos < text.size()) {
    const uint32_t cp = utf8_next(text, pos);
    if (is_space_cp(cp)) {
      if (!cur.empty()) tokens.push_back(std::move(cur));
      cur.clear();
    } else if (is_ascii_punct(cp)) {
      continue;  // stripped
    } else {
      cur += utf8_encode(ascii_lower(cp));
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

std::vector<std::string> tokenize_zh(const std::string& text) {
  std::vector<std::string> tokens;
  size_t pos = 0;
  while (pos < text.size()) {
    const uint32_t cp = utf8_next(text, pos);
    if (is_space_cp(cp) || is_ascii_punct(cp) || is_fullwidth_punct(cp)) continue;
    tokens.push_back(utf8_encode(cp));
  }
  return tokens;
}

std::vector<std::string> tokenize_cs(const std::string& text) {
  std::vector<std::string> tokens;
  std::string latin;
  const auto flush = [&]() {
    if (!latin.empty()) tokens.push_back(std::move(latin));
    latin.clear();
  };
  size_t pos = 0;
  while (pos < text.size()) {
    const uint32_t cp = utf8_next(text, pos);
    if (is_space_cp(cp)) {
      flush();
    } else if (is_ascii_punct(cp) || is_fullwidth_punct(cp)) {
      flush();
    } else if (is_cjk(cp)) {
      flush();
      tokens.push_back(utf8_encode(cp));
    } else {
      latin += utf8_encode(ascii_lower(cp));
    }
  }
  flush();
  return tokens;
}

std::vector<std::string> tokenize_lenient(const std::string& text, Lang language) {
  switch (language) {
    case Lang::kEn: return tokenize_en(text);
    case Lang::kZh: return tokenize_zh(text);
    case Lang::kCs: return tokenize_cs(text);
  }
  throw DataError("invalid language tag");
}

}  // namespace

std::vector<std::string> tokenize_for_eval(const std::string& text, Lang language) {
  std::vector<std::string> tokens = tokenize_lenient(text, language);
  if (tokens.empty()) {
    throw EmptyInput("tokenize_for_eval: no tokens after normalization");
  }
  return tokens;
}

EditCounts edit_distance(const std::vector<std::string>& reference,
                         const std::vector<std::string>& hypothesis) {
  const size_t m = reference.size();
  const size_t n = hypothesis.size();
  std::vector<std::vector<int32_t>> dp(m + 1, std::vector<int32_t>(n + 1, 0));
  for (size_t i = 0; i <= m; ++i) dp[i][0] = static_cast<int32_t>(i);
  for (size_t j = 0; j <= n; ++j) dp[0][j] = static_cast<int32_t>(j);
  for (size_t i = 1; i <= m; ++i) {
    for (size_t j = 1; j <= n; ++j) {
      const int32_t sub_cost = reference[i - 1] == hypothesis[j - 1] ? 0 : 1;
      dp[i][j] = std::min({dp[i - 1][j - 1] + sub_cost, dp[i - 1][j] + 1,
                           dp[i][j - 1] + 1});
    }
  }

  // Backtrace; equal-cost choices prefer substitution > deletion > insertion.
  EditCounts counts;
  size_t i = m, j = n;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const int32_t sub_cost = reference[i - 1] == hypothesis[j - 1] ? 0 : 1;
      if (dp[i][j] == dp[i - 1][j - 1] + sub_cost) {
        counts.substitutions += sub_cost;
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && dp[i][j] == dp[i - 1][j] + 1) {
      ++counts.deletions;
      --i;
      continue;
    }
    ++counts.insertions;
    --j;
  }
  return counts;
}

EvalReport corpus_wer(const std::vector<EvalPair>& pairs) {
  if (pairs.empty()) throw EmptyInput("corpus_wer: no evaluation pairs");
  EvalReport report;
  for (const EvalPair& pair : pairs) {
    const std::vector<std::string> ref =
        tokenize_for_eval(pair.reference, pair.language);
    // An empty hypothesis is a legitimate ASR output and scores as
    // deletions; only an empty reference is an error.
    const std::vector<std::string> hyp =
        tokenize_lenient(pair.hypothesis, pair.language);

    UtteranceScore score;
    score.id = pair.id;
    score.counts = edit_distance(ref, hyp);
    score.n_ref_tokens = static_cast<int64_t>(ref.size());
    score.wer = static_cast<double>(score.counts.total()) /
                static_cast<double>(score.n_ref_tokens);

    report.pooled.substitutions += score.counts.substitutions;
    report.pooled.deletions += score.counts.deletions;
    report.pooled.insertions += score.counts.insertions;
    report.n_ref_tokens += score.n_ref_tokens;
    report.per_utterance.push_back(std::move(score));
  }
  report.wer = static_cast<double>(report.pooled.total()) /
               static_cast<double>(report.n_ref_tokens);
  return report;
}

double cosine_similarity(const SpeakerEmbedding& a, const SpeakerEmbedding& b) {
  if (a.vector.size() != b.vector.size()) {
    throw DimensionError("cosine_similarity: dimension mismatch (" +
                         std::to_string(a.vector.size()) + " vs " +
                         std::to_string(b.vector.size()) + ")");
  }
  if (a.vector.size() == 0) throw DimensionError("cosine_similarity: empty vectors");
  const double na = a.vector.cast<double>().norm();
  const double nb = b.vector.cast<double>().norm();
  if (na == 0.0 || nb == 0.0) {
    throw DataError("cosine_similarity: zero-norm embedding");
  }
  return a.vector.cast<double>().dot(b.vector.cast<double>()) / (na * nb);
}

ScsReport scs_report(const std::vector<SpeakerEmbedding>& generated,
                     const std::vector<SpeakerEmbedding>& targets) {
  if (generated.empty()) throw EmptyInput("scs_report: no generated embeddings");
  if (targets.empty()) throw EmptyInput("scs_report: no target embeddings");

  // Mean embedding per target speaker, keyed by source_id.
  std::map<std::string, std::pair<Eigen::VectorXd, int64_t>> sums;
  for (const SpeakerEmbedding& t : targets) {
    auto& slot = sums[t.source_id];
    if (slot.second == 0) {
      slot.first = t.vector.cast<double>();
    } else {
      if (slot.first.size() != t.vector.size()) {
        throw DimensionError("scs_report: target dims differ for speaker \"" +
                             t.source_id + "\"");
      }
      slot.first += t.vector.cast<double>();
    }
    ++slot.second;
  }
  std::vector<SpeakerEmbedding> speaker_means;
  for (const auto& [speaker, sum] : sums) {
    SpeakerEmbedding mean;
    mean.source_id = speaker;
    mean.vector = (sum.first / static_cast<double>(sum.second)).cast<float>();
    speaker_means.push_back(std::move(mean));
  }

  ScsReport report;
  double total = 0.0;
  for (const SpeakerEmbedding& g : generated) {
    ScsSample s;
    s.id = g.source_id;
    s.scs = -2.0;
    for (const SpeakerEmbedding& mean : speaker_means) {
      const double c = cosine_similarity(g, mean);
      if (c > s.scs) {
        s.scs = c;
        s.best_speaker = mean.source_id;
      }
    }
    total += s.scs;
    report.per_sample.push_back(std::move(s));
  }
  report.n_samples = static_cast<int64_t>(report.per_sample.size());
  report.mean = total / static_cast<double>(report.n_samples);
  if (report.n_samples > 1) {
    double ss = 0.0;
    for (const ScsSample& s : report.per_sample) {
      ss += (s.scs - report.mean) * (s.scs - report.mean);
    }
    report.stddev = std::sqrt(ss / static_cast<double>(report.n_samples - 1));
  }
  return report;
}

void write_embeddings_file(const std::string& path,
                           const std::vector<SpeakerEmbedding>& embeddings) {
  if (embeddings.empty()) throw EmptyInput("write_embeddings_file: no embeddings");
  const Eigen::Index dim = embeddings.front().vector.size();
  ByteWriter w;
  w.magic("EMBV");
  w.u32(1);
  w.u32(static_cast<uint32_t>(embeddings.size()));
  w.u32(static_cast<uint32_t>(dim));
  for (const SpeakerEmbedding& e : embeddings) {
    if (e.vector.size() != dim) {
      throw DimensionError("write_embeddings_file: inconsistent dims");
    }
    if (e.source_id.size() > 0xFFFF) {
      throw DataError("write_embeddings_file: id too long");
    }
    w.u16(static_cast<uint16_t>(e.source_id.size()));
    w.bytes(e.source_id.data(), e.source_id.size());
    w.bytes(e.vector.data(), static_cast<size_t>(dim) * sizeof(float));
  }
  write_file_bytes(path, w.str());
}

std::vector<SpeakerEmbedding> parse_embeddings_file(const std::string& bytes) {
  ByteReader r(bytes);
  r.expect_magic("EMBV", "speaker embeddings");
  const uint32_t version = r.u32();
  if (version != 1) {
    throw ParseError("speaker embeddings: unsupported version " +
                     std::to_string(version));
  }
  const uint32_t count = r.u32();
  const uint32_t dim = r.u32();
  if (dim == 0) throw ParseError("speaker embeddings: zero dimension");
  std::vector<SpeakerEmbedding> out;
  out.reserve(count);
  for (uint32_t i = 0; i < count; ++i) {
    SpeakerEmbedding e;
    const uint16_t id_len = r.u16();
    e.source_id = r.read_string(id_len, "speaker embeddings: id");
    e.vector.resize(dim);
    r.read_into(e.vector.data(), static_cast<size_t>(dim) * sizeof(float),
                "speaker embeddings: vector");
    if (!e.vector.allFinite()) {
      throw DataError("speaker embeddings: non-finite vector for \"" +
                      e.source_id + "\"");
    }
    out.push_back(std::move(e));
  }
  if (r.remaining() != 0) {
    throw ParseError("speaker embeddings: trailing bytes after last entry");
  }
  return out;
}

std::vector<SpeakerEmbedding> read_embeddings_file(const std::string& path) {
  return parse_embeddings_file(read_file_bytes(path));
}

std::vector<std::pair<std::string, std::string>> read_tsv_texts(
    const std::string& path) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const std::string& line : read_text_lines(path)) {
    const size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError("expected \"<id>\\t<text>\" line, got: " + line);
    }
    out.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return out;
}

}  // namespace cskit
