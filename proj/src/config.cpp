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

#include "cskit/config.hpp"

#include <charconv>
#include <functional>
#include <map>
#include <sstream>

#include "cskit/errors.hpp"
#include "cskit/io.hpp"

namespace cskit {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

uint64_t to_u64(const std::string& key, const std::string& v) {
  uint64_t out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw ConfigError("config: bad integer for " + key + ": \"" + v + "\"");
  }
  return out;
}

int to_int(const std::string& key, const std::string& v) {
  int out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw ConfigError("config: bad integer for " + key + ": \"" + v + "\"");
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    size_t consumed = 0;
    const double out = std::stod(v, &consumed);
    if (consumed != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw ConfigError("config: bad number for " + key + ": \"" + v + "\"");
  }
}

std::string format_double(double v) {
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

}  // namespace

PipelineConfig parse_config(const std::string& content) {
  PipelineConfig c;
  std::map<std::string, std::function<void(const std::string&, const std::string&)>>
      setters = {
          {"run.seed", [&](const std::string& k, const std::string& v) { c.seed = to_u64(k, v); }},
          {"run.jobs", [&](const std::string& k, const std::string& v) { c.jobs = to_int(k, v); }},
          {"paths.en_manifest", [&](const std::string&, const std::string& v) { c.en_manifest = v; }},
          {"paths.zh_manifest", [&](const std::string&, const std::string& v) { c.zh_manifest = v; }},
          {"paths.en_alignments", [&](const std::string&, const std::string& v) { c.en_alignments = v; }},
          {"paths.zh_alignments", [&](const std::string&, const std::string& v) { c.zh_alignments = v; }},
          {"paths.features", [&](const std::string&, const std::string& v) { c.features_dir = v; }},
          {"paths.lexicon", [&](const std::string&, const std::string& v) { c.lexicon = v; }},
          {"paths.base_tokens", [&](const std::string&, const std::string& v) { c.base_tokens = v; }},
          {"paths.base_embeddings", [&](const std::string&, const std::string& v) { c.base_embeddings = v; }},
          {"paths.out_root", [&](const std::string&, const std::string& v) { c.out_root = v; }},
          {"kmeans.k", [&](const std::string& k, const std::string& v) { c.k = to_int(k, v); }},
          {"kmeans.batch_size", [&](const std::string& k, const std::string& v) { c.batch_size = to_int(k, v); }},
          {"kmeans.iterations", [&](const std::string& k, const std::string& v) { c.iterations = to_int(k, v); }},
          {"units.frame_rate", [&](const std::string& k, const std::string& v) { c.frame_rate = to_double(k, v); }},
          {"construct.format", [&](const std::string&, const std::string& v) { c.format = dataset_format_from_string(v); }},
          {"construct.hours_budget", [&](const std::string& k, const std::string& v) { c.hours_budget = to_double(k, v); }},
          {"construct.max_clip_s", [&](const std::string& k, const std::string& v) { c.max_clip_s = to_double(k, v); }},
          {"construct.max_samples", [&](const std::string& k, const std::string& v) { c.max_samples = to_u64(k, v); }},
          {"construct.words_per_clip", [&](const std::string& k, const std::string& v) { c.words_per_clip = to_int(k, v); }},
          {"vocab.init_std", [&](const std::string& k, const std::string& v) { c.init_std = to_double(k, v); }},
          {"format.strategy", [&](const std::string&, const std::string& v) { c.strategy = strategy_from_string(v); }},
      };

  std::string section;
  std::istringstream in(content);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": unterminated section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string key = section + "." + trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": unknown key \"" + key + "\"");
    }
    it->second(key, value);
  }
  return c;
}

PipelineConfig load_config(const std::string& path) {
  return parse_config(read_file_bytes(path));
}

std::string serialize_config(const PipelineConfig& c) {
  std::ostringstream out;
  out << "[run]\n";
  out << "seed = " << c.seed << "\n";
  out << "jobs = " << c.jobs << "\n";
  out << "\n[paths]\n";
  out << "en_manifest = " << c.en_manifest << "\n";
  out << "zh_manifest = " << c.zh_manifest << "\n";
  out << "en_alignments = " << c.en_alignments << "\n";
  out << "zh_alignments = " << c.zh_alignments << "\n";
  out << "features = " << c.features_dir << "\n";
  out << "lexicon = " << c.lexicon << "\n";
  out << "base_tokens = " << c.base_tokens << "\n";
  out << "base_embeddings = " << c.base_embeddings << "\n";
  out << "out_root = " << c.out_root << "\n";
  out << "\n[kmeans]\n";
  out << "k = " << c.k << "\n";
  out << "batch_size = " << c.batch_size << "\n";
  out << "iterations = " << c.iterations << "\n";
  out << "\n[units]\n";
  out << "frame_rate = " << format_double(c.frame_rate) << "\n";
  out << "\n[construct]\n";
  out << "format = " << dataset_format_to_string(c.format) << "\n";
  out << "hours_budget = " << format_double(c.hours_budget) << "\n";
  out << "max_clip_s = " << format_double(c.max_clip_s) << "\n";
  out << "max_samples = " << c.max_samples << "\n";
  out << "words_per_clip = " << c.words_per_clip << "\n";
  out << "\n[vocab]\n";
  out << "init_std = " << format_double(c.init_std) << "\n";
  out << "\n[format]\n";
  out << "strategy = " << strategy_to_string(c.strategy) << "\n";
  return out.str();
}

void save_config(const std::string& path, const PipelineConfig& config) {
  write_file_bytes(path, serialize_config(config));
}

void validate_config(const PipelineConfig& c) {
  if (c.jobs < 1) throw ConfigError("run.jobs must be >= 1");
  if (c.k < 1) throw ConfigError("kmeans.k must be >= 1");
  if (c.batch_size < 1) throw ConfigError("kmeans.batch_size must be >= 1");
  if (c.iterations < 1) throw ConfigError("kmeans.iterations must be >= 1");
  if (!(c.frame_rate > 0)) throw ConfigError("units.frame_rate must be positive");
  if (!(c.hours_budget > 0)) throw ConfigError("construct.hours_budget must be positive");
  if (!(c.max_clip_s > 0)) throw ConfigError("construct.max_clip_s must be positive");
  if (c.max_samples < 1) throw ConfigError("construct.max_samples must be >= 1");
  if (c.words_per_clip != 1) {
    throw ConfigError("construct.words_per_clip: only 1 is supported");
  }
  if (c.init_std < 0) throw ConfigError("vocab.init_std must be >= 0 (0 = auto)");
}

}  // namespace cskit
