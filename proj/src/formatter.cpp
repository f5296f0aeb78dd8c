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

#include "cskit/formatter.hpp"

#include <filesystem>

#include "json.hpp"

#include "cskit/errors.hpp"
#include "cskit/io.hpp"
#include "cskit/rng.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace cskit {

std::string task_to_string(TaskType t) {
  switch (t) {
    case TaskType::kAsr: return "ASR";
    case TaskType::kTts: return "TTS";
    case TaskType::kCsTts: return "CSTTS";
    case TaskType::kCsAsr: return "CSASR";
  }
  throw DataError("invalid task type");
}

namespace {

TaskType task_from_string(const std::string& s) {
  if (s == "ASR") return TaskType::kAsr;
  if (s == "TTS") return TaskType::kTts;
  if (s == "CSTTS") return TaskType::kCsTts;
  if (s == "CSASR") return TaskType::kCsAsr;
  throw ParseError("unknown task: \"" + s + "\"");
}

}  // namespace

std::string render_units(const UnitSequence& seq, const VocabSpec& spec) {
  if (seq.units.empty()) throw EmptyInput("render_units: empty unit sequence");
  std::string out;
  for (int32_t u : seq.units) {
    if (u < 0 || u >= spec.unit_count) {
      throw RangeError("render_units: unit " + std::to_string(u) +
                       " outside [0, " + std::to_string(spec.unit_count) + ")");
    }
    out += unit_token(u);
  }
  return out;
}

TaskRecord format_tts(const UtteranceRecord& record, const UnitSequence& units,
                      const VocabSpec& spec) {
  TaskRecord out;
  out.task = TaskType::kTts;
  switch (record.language) {
    case Lang::kEn: out.instruction = kInstructionTtsEn; break;
    case Lang::kZh: out.instruction = kInstructionTtsZh; break;
    default:
      throw UnsupportedFormat("format_tts: unsupported language");
  }
  out.input = record.text;
  out.output = render_units(units, spec);
  out.language = record.language;
  out.source_id = record.id;
  return out;
}

TaskRecord format_asr(const UtteranceRecord& record, const UnitSequence& units,
                      const VocabSpec& spec) {
  TaskRecord out;
  out.task = TaskType::kAsr;
  switch (record.language) {
    case Lang::kEn: out.instruction = kInstructionAsrEn; break;
    case Lang::kZh: out.instruction = kInstructionAsrZh; break;
    default:
      throw UnsupportedFormat("format_asr: unsupported language");
  }
  out.input = render_units(units, spec);
  out.output = record.text;
  out.language = record.language;
  out.source_id = record.id;
  return out;
}

TaskRecord format_cs(const CsSample& sample, const UnitSequence& units,
                     const VocabSpec& spec, TaskType direction) {
  if (sample.text.empty() || sample.clips.empty()) {
    throw MissingAsset("format_cs: sample \"" + sample.id + "\" is not rendered");
  }
  TaskRecord out;
  out.language = Lang::kCs;
  out.source_id = sample.id;
  const std::string rendered = render_units(units, spec);
  if (direction == TaskType::kCsTts) {
    out.task = TaskType::kCsTts;
    out.instruction = kInstructionCsTts;
    out.input = sample.text;
    out.output = rendered;
  } else if (direction == TaskType::kCsAsr) {
    out.task = TaskType::kCsAsr;
    out.instruction = kInstructionCsAsr;
    out.input = rendered;
    out.output = sample.text;
  } else {
    throw DataError("format_cs: direction must be CSTTS or CSASR");
  }
  return out;
}

TrainingStrategy strategy_from_string(const std::string& s) {
  if (s == "one_stage") return TrainingStrategy::kOneStage;
  if (s == "two_stage") return TrainingStrategy::kTwoStage;
  throw ConfigError("unknown strategy: \"" + s + "\" (one_stage|two_stage)");
}

std::string strategy_to_string(TrainingStrategy s) {
  return s == TrainingStrategy::kOneStage ? "one_stage" : "two_stage";
}

std::string task_record_to_json(const TaskRecord& rec) {
  ordered_json j;
  j["task"] = task_to_string(rec.task);
  j["instruction"] = rec.instruction;
  j["input"] = rec.input;
  j["output"] = rec.output;
  j["lang"] = lang_to_string(rec.language);
  j["source_id"] = rec.source_id;
  return j.dump();
}

TaskRecord task_record_from_json(const std::string& line) {
  try {
    const nlohmann::json j = nlohmann::json::parse(line);
    TaskRecord rec;
    rec.task = task_from_string(j.at("task").get<std::string>());
    rec.instruction = j.at("instruction").get<std::string>();
    rec.input = j.at("input").get<std::string>();
    rec.output = j.at("output").get<std::string>();
    rec.language = lang_from_string(j.at("lang").get<std::string>(), true);
    rec.source_id = j.at("source_id").get<std::string>();
    return rec;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("task record: " + std::string(e.what()));
  }
}

std::vector<std::vector<TaskRecord>> plan_stages(
    TrainingStrategy strategy, const std::vector<TaskRecord>& monolingual_records,
    const std::vector<TaskRecord>& cs_records, uint64_t shuffle_seed) {
  Rng rng(shuffle_seed);
  std::vector<std::vector<TaskRecord>> stages;
  if (strategy == TrainingStrategy::kOneStage) {
    std::vector<TaskRecord> all = monolingual_records;
    all.insert(all.end(), cs_records.begin(), cs_records.end());
    if (all.empty()) throw EmptyInput("plan_manifests: no records");
    rng.shuffle(all);
    stages.push_back(std::move(all));
  } else {
    if (monolingual_records.empty()) {
      throw EmptyInput("plan_manifests: stage 1 has no records");
    }
    if (cs_records.empty()) {
      throw EmptyInput("plan_manifests: stage 2 has no records");
    }
    std::vector<TaskRecord> stage1 = monolingual_records;
    std::vector<TaskRecord> stage2 = cs_records;
    rng.shuffle(stage1);
    rng.shuffle(stage2);
    stages.push_back(std::move(stage1));
    stages.push_back(std::move(stage2));
  }
  return stages;
}

ManifestPlan plan_manifests(TrainingStrategy strategy,
                            const std::vector<TaskRecord>& monolingual_records,
                            const std::vector<TaskRecord>& cs_records,
                            uint64_t shuffle_seed, const std::string& out_dir) {
  const auto stages =
      plan_stages(strategy, monolingual_records, cs_records, shuffle_seed);
  fs::create_directories(out_dir);

  ManifestPlan plan;
  plan.strategy = strategy;
  for (size_t s = 0; s < stages.size(); ++s) {
    StagePlan sp;
    sp.stage_index = static_cast<int>(s) + 1;
    sp.file = strategy == TrainingStrategy::kOneStage
                  ? "train.jsonl"
                  : "stage" + std::to_string(sp.stage_index) + ".jsonl";
    std::string out;
    for (const TaskRecord& rec : stages[s]) {
      ++sp.counts_per_task[task_to_string(rec.task)];
      out += task_record_to_json(rec);
      out += '\n';
    }
    write_file_bytes((fs::path(out_dir) / sp.file).string(), out);
    plan.stages.push_back(std::move(sp));
  }

  ordered_json j;
  j["strategy"] = strategy_to_string(strategy);
  ordered_json stages_json = ordered_json::array();
  for (const StagePlan& sp : plan.stages) {
    stages_json.push_back({{"stage", sp.stage_index},
                           {"file", sp.file},
                           {"counts", sp.counts_per_task}});
  }
  j["stages"] = std::move(stages_json);
  write_file_bytes((fs::path(out_dir) / "plan.json").string(), j.dump(2) + "\n");
  return plan;
}

}  // namespace cskit
