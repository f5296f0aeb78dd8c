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

#ifndef CSKIT_EVAL_HPP_
#define CSKIT_EVAL_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "cskit/common.hpp"

namespace cskit {

struct EvalPair {
  std::string id;
  std::string hypothesis;
  std::string reference;
  Lang language = Lang::kEn;
};

// Normalization is part of the scoring interface:
//   EN: lowercase, strip [.,?!;:"'()], split on whitespace.
//   ZH: per character after removing whitespace and punctuation (the ASCII
//       set plus fullwidth equivalents).
//   CS: ZH rule for CJK codepoints, EN rule for Latin runs.
// An empty token list raises EmptyInput.
std::vector<std::string> tokenize_for_eval(const std::string& text, Lang language);

struct EditCounts {
  int64_t substitutions = 0;
  int64_t deletions = 0;   // reference tokens with no hypothesis counterpart
  int64_t insertions = 0;  // hypothesis tokens with no reference counterpart

  int64_t total() const { return substitutions + deletions + insertions; }
};

// Levenshtein alignment with unit costs, minimizing S+D+I. Ties in the
// backtrace prefer substitution over deletion over insertion.
EditCounts edit_distance(const std::vector<std::string>& reference,
                         const std::vector<std::string>& hypothesis);

struct UtteranceScore {
  std::string id;
  EditCounts counts;
  int64_t n_ref_tokens = 0;
  double wer = 0.0;
};

// Pooled over all pairs: WER = (S+D+I) / total reference tokens, not the
// mean of per-utterance rates. The per-utterance view is kept alongside.
struct EvalReport {
  EditCounts pooled;
  int64_t n_ref_tokens = 0;
  double wer = 0.0;
  std::vector<UtteranceScore> per_utterance;
};

EvalReport corpus_wer(const std::vector<EvalPair>& pairs);

struct SpeakerEmbedding {
  std::string source_id;
  Eigen::VectorXf vector;
};

double cosine_similarity(const SpeakerEmbedding& a, const SpeakerEmbedding& b);

struct ScsSample {
  std::string id;
  std::string best_speaker;
  double scs = 0.0;
};

// Per-sample SCS = max over target speakers of the cosine against that
// speaker's mean embedding; reported as mean +/- sample std over samples.
struct ScsReport {
  double mean = 0.0;
  double stddev = 0.0;
  int64_t n_samples = 0;
  std::vector<ScsSample> per_sample;
};

ScsReport scs_report(const std::vector<SpeakerEmbedding>& generated,
                     const std::vector<SpeakerEmbedding>& targets);

// EMBV: "EMBV" u32 version=1, u32 count, u32 dim, then per entry
// u16 id-length + UTF-8 id + dim f32.
void write_embeddings_file(const std::string& path,
                           const std::vector<SpeakerEmbedding>& embeddings);
std::vector<SpeakerEmbedding> read_embeddings_file(const std::string& path);
std::vector<SpeakerEmbedding> parse_embeddings_file(const std::string& bytes);

// "<id>\t<text>" per line.
std::vector<std::pair<std::string, std::string>> read_tsv_texts(
    const std::string& path);

}  // namespace cskit

#endif  // CSKIT_EVAL_HPP_
