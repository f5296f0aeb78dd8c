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

#ifndef CSKIT_CORPUS_HPP_
#define CSKIT_CORPUS_HPP_

#include <string>
#include <vector>

#include "cskit/common.hpp"

namespace cskit {

// One monolingual corpus item after ingest. Audio is 16 kHz mono PCM;
// `words` are sorted, non-overlapping aligned spans (characters for
// Mandarin before segmentation).
struct UtteranceRecord {
  std::string id;
  std::string audio_path;
  int sample_rate = 0;
  std::string text;
  Lang language = Lang::kEn;
  std::string speaker_id;
  std::vector<WordAlignment> words;
  double duration_s = 0.0;
};

struct RejectedLine {
  int line_no = 0;  // 1-based position in the manifest
  std::string id;
  std::string reason;
};

struct CorpusLoadResult {
  std::vector<UtteranceRecord> records;
  std::vector<RejectedLine> rejects;
};

struct IngestOptions {
  // Where resampled copies of non-16 kHz audio are written. Required if the
  // manifest references any such file.
  std::string normalized_audio_dir;
  int jobs = 1;
};

// Loads a line-delimited JSON manifest ({"id","audio","text","lang",
// "speaker","duration"}) plus one "<id>.TextGrid" per utterance from
// alignments_dir. Invalid records are rejected and reported with their
// line numbers; a duplicate id aborts the load with DuplicateId.
CorpusLoadResult load_corpus(const std::string& manifest_path,
                             const std::string& alignments_dir,
                             const IngestOptions& opts = {});

// records.jsonl round trip (ingested corpus artifact).
void write_records(const std::string& path,
                   const std::vector<UtteranceRecord>& records);
std::vector<UtteranceRecord> read_records(const std::string& path);

// Invariant check shared by ingest and segmentation: spans sorted by start,
// non-overlapping within kOverlapEpsilonS, each with end > start.
void validate_word_spans(const std::vector<WordAlignment>& words);

}  // namespace cskit

#endif  // CSKIT_CORPUS_HPP_
