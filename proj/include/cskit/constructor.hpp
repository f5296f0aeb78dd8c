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

#ifndef CSKIT_CONSTRUCTOR_HPP_
#define CSKIT_CONSTRUCTOR_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "cskit/audio.hpp"
#include "cskit/corpus.hpp"
#include "cskit/rng.hpp"
#include "cskit/units.hpp"

namespace cskit {

// A word-level audio span, the atomic unit of CS construction.
struct SpeechClip {
  std::string utterance_id;
  std::string word;
  double start_s = 0.0;
  double end_s = 0.0;
  std::string speaker_id;
  Lang language = Lang::kEn;

  double duration_s() const { return end_s - start_s; }
};

struct ClipPool {
  Lang language = Lang::kEn;
  std::vector<SpeechClip> clips;
  int64_t excluded = 0;  // clips dropped for exceeding max_clip_s
};

struct ClipPools {
  ClipPool en;
  ClipPool zh;
  // Source audio length (16 kHz samples) per utterance; used for exact
  // duration accounting without touching the audio at sampling time.
  std::unordered_map<std::string, int64_t> source_samples;

  const ClipPool& pool(Lang lang) const { return lang == Lang::kEn ? en : zh; }
};

enum class SampleFormat { kDual, kTriple };
enum class DatasetFormat { kDual, kTriple, kMixed };

std::string dataset_format_to_string(DatasetFormat f);
DatasetFormat dataset_format_from_string(const std::string& s);

// An ordered cross-language clip sequence. duration_samples is the exact
// length of the rendered 16 kHz waveform (sum of per-clip slice lengths).
struct CsSample {
  std::string id;  // hash of (seed, index)
  SampleFormat format = SampleFormat::kDual;
  std::vector<SpeechClip> clips;
  std::string text;  // words joined with single ASCII spaces
  int64_t duration_samples = 0;
  double duration_s = 0.0;
};

struct DatasetSpec {
  DatasetFormat format = DatasetFormat::kMixed;
  double hours_budget = 10.0;
  uint64_t seed = 0;
  double max_clip_s = 2.0;
  uint64_t max_samples = 10'000'000;
};

struct ConstructionStats {
  int64_t n_samples = 0;
  int64_t n_dual = 0;
  int64_t n_triple = 0;
  int64_t total_duration_samples = 0;
  double total_duration_s = 0.0;
  std::map<std::string, int64_t> clip_counts;  // per language
  int64_t en_pool_size = 0;
  int64_t zh_pool_size = 0;
  int64_t en_excluded = 0;
  int64_t zh_excluded = 0;
};

struct CsDataset {
  std::vector<CsSample> samples;
  ConstructionStats stats;
};

// One clip per word occurrence (token-level sampling universe); words longer
// than max_clip_s are excluded and counted. English records contribute
// aligner word tokens; Mandarin records must already carry word-level spans
// from segmentation.
ClipPools build_clip_pools(const std::vector<UtteranceRecord>& en_records,
                           const std::vector<UtteranceRecord>& zh_records,
                           double max_clip_s);

// Lang1-Lang2: leading language is a fair coin, one uniform clip per pool.
CsSample sample_dual(const ClipPools& pools, Rng& rng);

// Lang1-Lang2-Lang1: fair coin for the outer language, three independent
// uniform draws (outer, inner, outer).
CsSample sample_triple(const ClipPools& pools, Rng& rng);

// Appends samples until total duration first reaches the hours budget
// (the crossing sample is kept). MIXED alternates DUAL,TRIPLE strictly so
// the two counts never differ by more than one.
CsDataset build_dataset(const DatasetSpec& spec, const ClipPools& pools);

// Resolves utterance ids to audio and feature data, with caching. Not
// thread-safe while loading; preload() first when rendering in parallel.
class AssetStore {
 public:
  void add_records(const std::vector<UtteranceRecord>& records,
                   const std::string& features_dir);

  const PcmBuffer& audio(const std::string& utterance_id) const;
  const FeatureMatrix& features(const std::string& utterance_id) const;
  const UtteranceRecord& record(const std::string& utterance_id) const;

  void preload(const std::vector<std::string>& utterance_ids, int jobs);

 private:
  struct Entry {
    UtteranceRecord record;
    std::string feature_path;
    mutable bool loaded = false;
    mutable PcmBuffer audio;
    mutable FeatureMatrix features;
  };
  const Entry& entry(const std::string& utterance_id) const;
  void load(const Entry& e) const;

  std::unordered_map<std::string, Entry> entries_;
};

struct RenderedSample {
  PcmBuffer waveform;
  UnitSequence units;  // deduped over the full concatenated raw sequence
  std::string text;
};

RenderedSample render_sample(const CsSample& sample, const AssetStore& store,
                             const CodebookModel& model);

// samples.jsonl round trip plus the stats consistency check used by tests
// and the CLI (stats must be recomputable from samples.jsonl exactly).
void write_samples_jsonl(const std::string& path,
                         const std::vector<CsSample>& samples);
std::vector<CsSample> read_samples_jsonl(const std::string& path);
void write_stats_json(const std::string& path, const ConstructionStats& stats,
                      const DatasetSpec& spec);
ConstructionStats recompute_stats(const std::vector<CsSample>& samples);

}  // namespace cskit

#endif  // CSKIT_CONSTRUCTOR_HPP_
