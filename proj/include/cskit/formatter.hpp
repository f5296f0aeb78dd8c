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

#ifndef CSKIT_FORMATTER_HPP_
#define CSKIT_FORMATTER_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cskit/constructor.hpp"
#include "cskit/corpus.hpp"
#include "cskit/units.hpp"
#include "cskit/vocab.hpp"

namespace cskit {

// Instruction templates. These strings are interface constants; downstream
// consumers match on the exact bytes.
inline constexpr const char* kInstructionTtsEn = "Please speak the sentence.";
inline constexpr const char* kInstructionTtsZh = "请说出下面的句子。";
inline constexpr const char* kInstructionAsrEn = "Please transcribe the speech.";
inline constexpr const char* kInstructionAsrZh = "请把语音转录成文本。";
inline constexpr const char* kInstructionCsTts =
    "Please speak the code-switched sentence.";
// No dedicated CS-ASR prompt is defined; the English ASR instruction is
// reused (recorded in run metadata).
inline constexpr const char* kInstructionCsAsr = "Please transcribe the speech.";

enum class TaskType { kAsr, kTts, kCsTts, kCsAsr };

std::string task_to_string(TaskType t);

// One instruction-formatted training example. TTS-direction records carry
// the transcript as input and the unit-token string as output; ASR-direction
// records are the exact field swap.
struct TaskRecord {
  TaskType task = TaskType::kTts;
  std::string instruction;
  std::string input;
  std::string output;
  Lang language = Lang::kEn;
  std::string source_id;
};

// "<|unit_7|><|unit_2|>" with no separators beyond the token delimiters.
std::string render_units(const UnitSequence& seq, const VocabSpec& spec);

TaskRecord format_tts(const UtteranceRecord& record, const UnitSequence& units,
                      const VocabSpec& spec);
TaskRecord format_asr(const UtteranceRecord& record, const UnitSequence& units,
                      const VocabSpec& spec);

TaskRecord format_cs(const CsSample& sample, const UnitSequence& units,
                     const VocabSpec& spec, TaskType direction);

enum class TrainingStrategy { kOneStage, kTwoStage };

TrainingStrategy strategy_from_string(const std::string& s);
std::string strategy_to_string(TrainingStrategy s);

struct StagePlan {
  int stage_index = 0;
  std::string file;  // relative to the manifest directory
  std::map<std::string, int64_t> counts_per_task;
};

struct ManifestPlan {
  TrainingStrategy strategy = TrainingStrategy::kOneStage;
  std::vector<StagePlan> stages;
};

// ONE_STAGE: one seeded-shuffled train.jsonl with every task. TWO_STAGE:
// stage1.jsonl = {ASR, TTS}, stage2.jsonl = {CSTTS, CSASR}, each shuffled.
// Every record lands in exactly one stage file.
ManifestPlan plan_manifests(TrainingStrategy strategy,
                            const std::vector<TaskRecord>& monolingual_records,
                            const std::vector<TaskRecord>& cs_records,
                            uint64_t shuffle_seed, const std::string& out_dir);

// In-memory variant used by tests; returns the per-stage record lists.
std::vector<std::vector<TaskRecord>> plan_stages(
    TrainingStrategy strategy, const std::vector<TaskRecord>& monolingual_records,
    const std::vector<TaskRecord>& cs_records, uint64_t shuffle_seed);

std::string task_record_to_json(const TaskRecord& rec);
TaskRecord task_record_from_json(const std::string& line);

}  // namespace cskit

#endif  // CSKIT_FORMATTER_HPP_
