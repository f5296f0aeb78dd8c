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

#include "cskit/constructor.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

#include "cskit/errors.hpp"
#include "cskit/io.hpp"
#include "cskit/parallel.hpp"

using ordered_json = nlohmann::ordered_json;

namespace cskit {

namespace {

uint64_t fnv1a64(const uint8_t* data, size_t n) {
  uint64_t h = 1469598103934665603ULL;
  for (size_t i = 0; i < n; ++i) {
    h ^= data[i];
    h *= 1099511628211ULL;
  }
  return h;
}

std::string sample_id(uint64_t seed, uint64_t index) {
  uint8_t bytes[16];
  for (int i = 0; i < 8; ++i) {
    bytes[i] = static_cast<uint8_t>((seed >> (8 * i)) & 0xFF);
    bytes[8 + i] = static_cast<uint8_t>((index >> (8 * i)) & 0xFF);
  }
  const uint64_t h = fnv1a64(bytes, 16);
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 0; i < 16; ++i) {
    out[15 - i] = hex[(h >> (4 * i)) & 0xF];
  }
  return out;
}

const SpeechClip& draw_clip(const ClipPool& pool, Rng& rng) {
  if (pool.clips.empty()) {
    throw EmptyPool("empty clip pool for language " + lang_to_string(pool.language));
  }
  return pool.clips[static_cast<size_t>(rng.uniform_index(pool.clips.size()))];
}

std::string join_words(const std::vector<SpeechClip>& clips) {
  std::string out;
  for (size_t i = 0; i < clips.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += clips[i].word;
  }
  return out;
}

}  // namespace

std::string dataset_format_to_string(DatasetFormat f) {
  switch (f) {
    case DatasetFormat::kDual: return "dual";
    case DatasetFormat::kTriple: return "triple";
    case DatasetFormat::kMixed: return "mixed";
  }
  throw DataError("invalid dataset format");
}

DatasetFormat dataset_format_from_string(const std::string& s) {
  if (s == "dual") return DatasetFormat::kDual;
  if (s == "triple") return DatasetFormat::kTriple;
  if (s == "mixed") return DatasetFormat::kMixed;
  throw ConfigError("unknown dataset format: \"" + s + "\" (dual|triple|mixed)");
}

ClipPools build_clip_pools(const std::vector<UtteranceRecord>& en_records,
                           const std::vector<UtteranceRecord>& zh_records,
                           double max_clip_s) {
  ClipPools pools;
  pools.en.language = Lang::kEn;
  pools.zh.language = Lang::kZh;

  const auto fill = [max_clip_s](const std::vector<UtteranceRecord>& records,
                                 ClipPool& pool) {
    for (const UtteranceRecord& rec : records) {
      if (rec.language != pool.language) {
        throw DataError("record \"" + rec.id + "\" has language " +
                        lang_to_string(rec.language) + ", expected " +
                        lang_to_string(pool.language));
      }
      for (const WordAlignment& w : rec.words) {
        SpeechClip clip;
        clip.utterance_id = rec.id;
        clip.word = w.word;
        clip.start_s = w.start_s;
        // aligners may overshoot the audio by up to the overlap epsilon
        clip.end_s = std::min(w.end_s, rec.duration_s);
        clip.speaker_id = rec.speaker_id;
        clip.language = rec.language;
        if (clip.duration_s() <= 0) continue;
        if (clip.duration_s() > max_clip_s) {
          ++pool.excluded;
          continue;
        }
        pool.clips.push_back(std::move(clip));
      }
    }
  };
  fill(en_records, pools.en);
  fill(zh_records, pools.zh);
  if (pools.en.clips.empty()) throw EmptyPool("no usable English clips");
  if (pools.zh.clips.empty()) throw EmptyPool("no usable Mandarin clips");

  pools.source_samples.clear();
  for (const UtteranceRecord& r : en_records) {
    pools.source_samples[r.id] = std::llround(r.duration_s * kTargetSampleRate);
  }
  for (const UtteranceRecord& r : zh_records) {
    pools.source_samples[r.id] = std::llround(r.duration_s * kTargetSampleRate);
  }
  return pools;
}

CsSample sample_dual(const ClipPools& pools, Rng& rng) {
  const bool en_first = rng.coin();
  const ClipPool& first = en_first ? pools.en : pools.zh;
  const ClipPool& second = en_first ? pools.zh : pools.en;
  CsSample s;
  s.format = SampleFormat::kDual;
  s.clips.push_back(draw_clip(first, rng));
  s.clips.push_back(draw_clip(second, rng));
  s.text = join_words(s.clips);
  return s;
}

CsSample sample_triple(const ClipPools& pools, Rng& rng) {
  const bool en_outer = rng.coin();
  const ClipPool& outer = en_outer ? pools.en : pools.zh;
  const ClipPool& inner = en_outer ? pools.zh : pools.en;
  CsSample s;
  s.format = SampleFormat::kTriple;
  s.clips.push_back(draw_clip(outer, rng));
  s.clips.push_back(draw_clip(inner, rng));
  s.clips.push_back(draw_clip(outer, rng));
  s.text = join_words(s.clips);
  return s;
}

CsDataset build_dataset(const DatasetSpec& spec, const ClipPools& pools) {
  if (spec.hours_budget <= 0) throw ConfigError("hours_budget must be positive");
  const int64_t budget_samples =
      std::llround(spec.hours_budget * 3600.0 * kTargetSampleRate);

  Rng rng(spec.seed);
  CsDataset out;
  ConstructionStats& stats = out.stats;
  stats.clip_counts["en"] = 0;
  stats.clip_counts["zh"] = 0;

  int64_t total = 0;
  for (uint64_t index = 0;; ++index) {
    if (index >= spec.max_samples) {
      throw BudgetError("budget of " + std::to_string(spec.hours_budget) +
                        " h not reached within max_samples = " +
                        std::to_string(spec.max_samples));
    }
    const bool dual = spec.format == DatasetFormat::kDual ||
                      (spec.format == DatasetFormat::kMixed && index % 2 == 0);
    CsSample s = dual ? sample_dual(pools, rng) : sample_triple(pools, rng);
    s.id = sample_id(spec.seed, index);
    for (const SpeechClip& clip : s.clips) {
      const auto it = pools.source_samples.find(clip.utterance_id);
      if (it == pools.source_samples.end()) {
        throw MissingAsset("no source duration for \"" + clip.utterance_id + "\"");
      }
      const auto [start, len] =
          slice_bounds(clip.start_s, clip.end_s, it->second, kTargetSampleRate);
      (void)start;
      s.duration_samples += len;
      ++stats.clip_counts[lang_to_string(clip.language)];
    }
    s.duration_s =
        static_cast<double>(s.duration_samples) / kTargetSampleRate;

    total += s.duration_samples;
    ++stats.n_samples;
    if (s.format == SampleFormat::kDual) {
      ++stats.n_dual;
    } else {
      ++stats.n_triple;
    }
    out.samples.push_back(std::move(s));
    if (total >= budget_samples) break;  // keep the crossing sample, then stop
  }

  stats.total_duration_samples = total;
  stats.total_duration_s = static_cast<double>(total) / kTargetSampleRate;
  stats.en_pool_size = static_cast<int64_t>(pools.en.clips.size());
  stats.zh_pool_size = static_cast<int64_t>(pools.zh.clips.size());
  stats.en_excluded = pools.en.excluded;
  stats.zh_excluded = pools.zh.excluded;
  return out;
}

void AssetStore::add_records(const std::vector<UtteranceRecord>& records,
                             const std::string& features_dir) {
  for (const UtteranceRecord& rec : records) {
    Entry e;
    e.record = rec;
    e.feature_path = features_dir + "/" + rec.id + ".sslf";
    entries_[rec.id] = std::move(e);
  }
}

const AssetStore::Entry& AssetStore::entry(const std::string& utterance_id) const {
  const auto it = entries_.find(utterance_id);
  if (it == entries_.end()) {
    throw MissingAsset("unknown utterance id: \"" + utterance_id + "\"");
  }
  return it->second;
}

void AssetStore::load(const Entry& e) const {
  if (e.loaded) return;
  try {
    e.audio = read_wav(e.record.audio_path);
  } catch (const IoError&) {
    throw MissingAsset("missing audio file: " + e.record.audio_path);
  }
  if (e.audio.sample_rate != kTargetSampleRate) {
    throw UnsupportedFormat("audio for \"" + e.record.id +
                            "\" is not 16 kHz; run ingest first");
  }
  try {
    e.features = read_features(e.feature_path);
  } catch (const IoError&) {
    throw MissingAsset("missing feature file: " + e.feature_path);
  }
  e.loaded = true;
}

const PcmBuffer& AssetStore::audio(const std::string& utterance_id) const {
  const Entry& e = entry(utterance_id);
  load(e);
  return e.audio;
}

const FeatureMatrix& AssetStore::features(const std::string& utterance_id) const {
  const Entry& e = entry(utterance_id);
  load(e);
  return e.features;
}

const UtteranceRecord& AssetStore::record(const std::string& utterance_id) const {
  return entry(utterance_id).record;
}

void AssetStore::preload(const std::vector<std::string>& utterance_ids, int jobs) {
  std::vector<std::string> unique = utterance_ids;
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  parallel_for(unique.size(), jobs, [&](size_t i) { load(entry(unique[i])); });
}

RenderedSample render_sample(const CsSample& sample, const AssetStore& store,
                             const CodebookModel& model) {
  RenderedSample out;
  out.text = sample.text;

  std::vector<PcmBuffer> pieces;
  UnitSequence raw;
  raw.deduped = false;
  for (const SpeechClip& clip : sample.clips) {
    const PcmBuffer& buf = store.audio(clip.utterance_id);
    pieces.push_back(slice_clip(buf, clip.start_s, clip.end_s));

    const FeatureMatrix& feats = store.features(clip.utterance_id);
    const auto [lo, hi] = frame_span(clip.start_s, clip.end_s,
                                     feats.frame_rate_hz, feats.n_frames());
    if (lo >= hi) {
      throw EmptyInput("render_sample: empty frame span for \"" + clip.word + "\"");
    }
    FeatureMatrix window;
    window.frame_rate_hz = feats.frame_rate_hz;
    window.frames = feats.frames.middleRows(lo, hi - lo);
    const UnitSequence clip_units = assign_units(window, model);
    raw.units.insert(raw.units.end(), clip_units.units.begin(),
                     clip_units.units.end());
  }
  out.waveform = concat_clips(pieces);
  out.units = dedup(raw);
  return out;
}

void write_samples_jsonl(const std::string& path,
                         const std::vector<CsSample>& samples) {
  std::string out;
  for (const CsSample& s : samples) {
    ordered_json j;
    j["id"] = s.id;
    j["format"] = s.format == SampleFormat::kDual ? "dual" : "triple";
    ordered_json clips = ordered_json::array();
    for (const SpeechClip& c : s.clips) {
      clips.push_back({{"utterance_id", c.utterance_id},
                       {"word", c.word},
                       {"start_s", c.start_s},
                       {"end_s", c.end_s},
                       {"speaker", c.speaker_id},
                       {"lang", lang_to_string(c.language)}});
    }
    j["clips"] = std::move(clips);
    j["text"] = s.text;
    j["duration_s"] = s.duration_s;
    j["duration_samples"] = s.duration_samples;
    out += j.dump();
    out += '\n';
  }
  write_file_bytes(path, out);
}

std::vector<CsSample> read_samples_jsonl(const std::string& path) {
  std::vector<CsSample> samples;
  for (const std::string& line : read_text_lines(path)) {
    try {
      const nlohmann::json j = nlohmann::json::parse(line);
      CsSample s;
      s.id = j.at("id").get<std::string>();
      const std::string fmt = j.at("format").get<std::string>();
      if (fmt == "dual") {
        s.format = SampleFormat::kDual;
      } else if (fmt == "triple") {
        s.format = SampleFormat::kTriple;
      } else {
        throw ParseError("samples.jsonl: bad format \"" + fmt + "\"");
      }
      for (const auto& c : j.at("clips")) {
        SpeechClip clip;
        clip.utterance_id = c.at("utterance_id").get<std::string>();
        clip.word = c.at("word").get<std::string>();
        clip.start_s = c.at("start_s").get<double>();
        clip.end_s = c.at("end_s").get<double>();
        clip.speaker_id = c.at("speaker").get<std::string>();
        clip.language = lang_from_string(c.at("lang").get<std::string>());
        s.clips.push_back(std::move(clip));
      }
      s.text = j.at("text").get<std::string>();
      s.duration_s = j.at("duration_s").get<double>();
      s.duration_samples = j.at("duration_samples").get<int64_t>();
      samples.push_back(std::move(s));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("samples.jsonl: " + std::string(e.what()));
    }
  }
  return samples;
}

ConstructionStats recompute_stats(const std::vector<CsSample>& samples) {
  ConstructionStats stats;
  stats.clip_counts["en"] = 0;
  stats.clip_counts["zh"] = 0;
  for (const CsSample& s : samples) {
    ++stats.n_samples;
    if (s.format == SampleFormat::kDual) {
      ++stats.n_dual;
    } else {
      ++stats.n_triple;
    }
    stats.total_duration_samples += s.duration_samples;
    for (const SpeechClip& c : s.clips) {
      ++stats.clip_counts[lang_to_string(c.language)];
    }
  }
  stats.total_duration_s =
      static_cast<double>(stats.total_duration_samples) / kTargetSampleRate;
  return stats;
}

void write_stats_json(const std::string& path, const ConstructionStats& stats,
                      const DatasetSpec& spec) {
  ordered_json j;
  j["dataset"] = {
      {"n_samples", stats.n_samples},
      {"n_dual", stats.n_dual},
      {"n_triple", stats.n_triple},
      {"total_duration_s", stats.total_duration_s},
      {"total_duration_samples", stats.total_duration_samples},
      {"clip_counts", stats.clip_counts},
  };
  j["pools"] = {
      {"en", {{"clips", stats.en_pool_size}, {"excluded", stats.en_excluded}}},
      {"zh", {{"clips", stats.zh_pool_size}, {"excluded", stats.zh_excluded}}},
  };
  j["config"] = {
      {"format", dataset_format_to_string(spec.format)},
      {"hours_budget", spec.hours_budget},
      {"seed", spec.seed},
      {"max_clip_s", spec.max_clip_s},
      {"max_samples", spec.max_samples},
      {"stop_rule", "first_crossing_inclusive"},
  };
  write_file_bytes(path, j.dump(2) + "\n");
}

}  // namespace cskit
