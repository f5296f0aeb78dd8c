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

#ifndef CSKIT_CONFIG_HPP_
#define CSKIT_CONFIG_HPP_

#include <cstdint>
#include <string>

#include "cskit/constructor.hpp"
#include "cskit/formatter.hpp"

namespace cskit {

// Shared pipeline configuration. A flat INI-style file with sections
// mirroring the subcommands; command-line flags override file values.
struct PipelineConfig {
  // [run]
  uint64_t seed = 0;
  int jobs = 1;

  // [paths]
  std::string en_manifest;
  std::string zh_manifest;
  std::string en_alignments;
  std::string zh_alignments;
  std::string features_dir;
  std::string lexicon;
  std::string base_tokens;
  std::string base_embeddings;
  std::string out_root;

  // [kmeans]
  int k = 1000;
  int batch_size = 1024;
  int iterations = 100;

  // [units]
  double frame_rate = 50.0;

  // [construct]
  DatasetFormat format = DatasetFormat::kMixed;
  double hours_budget = 10.0;
  double max_clip_s = 2.0;
  uint64_t max_samples = 10'000'000;
  int words_per_clip = 1;

  // [vocab]
  double init_std = 0.0;  // 0 = match the base matrix's std

  // [format]
  TrainingStrategy strategy = TrainingStrategy::kOneStage;

  bool operator==(const PipelineConfig&) const = default;
};

PipelineConfig load_config(const std::string& path);
PipelineConfig parse_config(const std::string& content);
std::string serialize_config(const PipelineConfig& config);
void save_config(const std::string& path, const PipelineConfig& config);

// Range checks shared by the CLI; throws ConfigError naming the first
// offending knob.
void validate_config(const PipelineConfig& config);

}  // namespace cskit

#endif  // CSKIT_CONFIG_HPP_
