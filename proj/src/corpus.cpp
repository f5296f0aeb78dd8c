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

#include "cskit/corpus.hpp"

#include <filesystem>
#include <unordered_set>
#include <variant>

#include "json.hpp"

#include "cskit/audio.hpp"
#include "cskit/errors.hpp"
#include "cskit/io.hpp"
#include "cskit/parallel.hpp"
#include "cskit/textgrid.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace cskit {

namespace {

struct ManifestLine {
  int line_no;
  std::string raw;
};

std::string require_string(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw ParseError(std::string("missing or non-string key \"") + key + "\"");
  }
  return j[key].get<std::string>();
}

double require_number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw ParseError(std::string("missing or non-numeric key \"") + key + "\"");
  }
  return j[key].get<double>();
}

// Parses, validates and normalizes one manifest line. Throws on any defect;
// the caller converts the exception into a RejectedLine.
UtteranceRecord ingest_one(const nlohmann::json& j, const fs::path& manifest_dir,
                           const std::string& alignments_dir,
                           const IngestOptions& opts) {
  UtteranceRecord rec;
  rec.id = require_string(j, "id");
  rec.text = require_string(j, "text");
  rec.language = lang_from_string(require_string(j, "lang"));
  rec.speaker_id = require_string(j, "speaker");
  const double declared_duration = require_number(j, "duration");
  if (declared_duration <= 0) throw ParseError("non-positive duration");

  fs::path audio = fs::path(require_string(j, "audio"));
  if (audio.is_relative()) audio = manifest_dir / audio;

  const fs::path tg_path = fs::path(alignments_dir) / (rec.id + ".TextGrid");
  if (!fs::exists(tg_path)) {
    throw MissingAlignment("MissingAlignment: " + tg_path.string());
  }
  rec.words = parse_textgrid(read_file_bytes(tg_path.string()), rec.language);
  validate_word_spans(rec.words);

  PcmBuffer buf = read_wav(audio.string());
  if (buf.sample_rate != kTargetSampleRate) {
    if (opts.normalized_audio_dir.empty()) {
      throw UnsupportedFormat("audio at " + std::to_string(buf.sample_rate) +
                              " Hz needs a normalized_audio_dir to resample into");
    }
    buf = resample_to_16k(buf);
    const fs::path norm = fs::path(opts.normalized_audio_dir) / (rec.id + ".wav");
    write_wav(norm.string(), buf);
    audio = norm;
  }
  rec.audio_path = audio.string();
  rec.sample_rate = buf.sample_rate;
  rec.duration_s = buf.duration_s();

  if (!rec.words.empty() &&
      rec.words.back().end_s > rec.duration_s + kOverlapEpsilonS) {
    throw ParseError("alignment exceeds audio duration (" +
                     std::to_string(rec.words.back().end_s) + " > " +
                     std::to_string(rec.duration_s) + ")");
  }
  return rec;
}

}  // namespace

void validate_word_spans(const std::vector<WordAlignment>& words) {
  for (size_t i = 0; i < words.size(); ++i) {
    if (words[i].end_s <= words[i].start_s) {
      throw ParseError("word span " + std::to_string(i) + " has end <= start");
    }
    if (i > 0 && words[i].start_s + kOverlapEpsilonS < words[i - 1].end_s) {
      throw ParseError("word spans " + std::to_string(i - 1) + " and " +
                       std::to_string(i) + " overlap");
    }
    if (i > 0 && words[i].start_s < words[i - 1].start_s) {
      throw ParseError("word spans not sorted by start time");
    }
  }
}

CorpusLoadResult load_corpus(const std::string& manifest_path,
                             const std::string& alignments_dir,
                             const IngestOptions& opts) {
  const fs::path manifest_dir = fs::path(manifest_path).parent_path();
  std::vector<std::string> lines = read_text_lines(manifest_path);

  // A duplicate id poisons the whole manifest; catch it before spending
  // time on audio.
  {
    std::unordered_set<std::string> seen;
    for (const std::string& line : lines) {
      nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.contains("id") || !j["id"].is_string()) continue;
      const std::string id = j["id"].get<std::string>();
      if (!seen.insert(id).second) {
        throw DuplicateId("duplicate utterance id: \"" + id + "\"");
      }
    }
  }

  if (!opts.normalized_audio_dir.empty()) {
    fs::create_directories(opts.normalized_audio_dir);
  }

  std::vector<std::variant<UtteranceRecord, RejectedLine>> slots(lines.size());
  parallel_for(lines.size(), opts.jobs, [&](size_t i) {
    const int line_no = static_cast<int>(i) + 1;
    std::string id;
    try {
      nlohmann::json j = nlohmann::json::parse(lines[i]);
      if (j.contains("id") && j["id"].is_string()) id = j["id"].get<std::string>();
      slots[i] = ingest_one(j, manifest_dir, alignments_dir, opts);
    } catch (const nlohmann::json::exception& e) {
      slots[i] = RejectedLine{line_no, id, std::string("ParseError: ") + e.what()};
    } catch (const MissingAlignment& e) {
      slots[i] = RejectedLine{line_no, id, e.what()};
    } catch (const Error& e) {
      slots[i] = RejectedLine{line_no, id, e.what()};
    }
  });

  CorpusLoadResult result;
  for (auto& slot : slots) {
    if (std::holds_alternative<UtteranceRecord>(slot)) {
      result.records.push_back(std::move(std::get<UtteranceRecord>(slot)));
    } else {
      result.rejects.push_back(std::move(std::get<RejectedLine>(slot)));
    }
  }
  return result;
}

void write_records(const std::string& path,
                   const std::vector<UtteranceRecord>& records) {
  std::string out;
  for (const UtteranceRecord& rec : records) {
    ordered_json j;
    j["id"] = rec.id;
    j["audio"] = rec.audio_path;
    j["sample_rate"] = rec.sample_rate;
    j["text"] = rec.text;
    j["lang"] = lang_to_string(rec.language);
    j["speaker"] = rec.speaker_id;
    j["duration"] = rec.duration_s;
    ordered_json words = ordered_json::array();
    for (const WordAlignment& w : rec.words) {
      words.push_back({{"w", w.word}, {"start", w.start_s}, {"end", w.end_s}});
    }
    j["words"] = std::move(words);
    out += j.dump();
    out += '\n';
  }
  write_file_bytes(path, out);
}

std::vector<UtteranceRecord> read_records(const std::string& path) {
  std::vector<UtteranceRecord> records;
  for (const std::string& line : read_text_lines(path)) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
      UtteranceRecord rec;
      rec.id = require_string(j, "id");
      rec.audio_path = require_string(j, "audio");
      rec.sample_rate = j.at("sample_rate").get<int>();
      rec.text = require_string(j, "text");
      rec.language = lang_from_string(require_string(j, "lang"));
      rec.speaker_id = require_string(j, "speaker");
      rec.duration_s = require_number(j, "duration");
      for (const auto& w : j.at("words")) {
        rec.words.push_back(WordAlignment{w.at("w").get<std::string>(),
                                          w.at("start").get<double>(),
                                          w.at("end").get<double>(), rec.language});
      }
      records.push_back(std::move(rec));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("records.jsonl: " + std::string(e.what()));
    }
  }
  return records;
}

}  // namespace cskit
