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

#include "cskit/units.hpp"

#include <cmath>

#include "cskit/errors.hpp"
#include "cskit/io.hpp"

namespace cskit {

UnitSequence assign_units(const FeatureMatrix& feats, const CodebookModel& model) {
  UnitSequence out;
  out.units = nearest_centroids(feats.frames, model);
  out.deduped = false;
  return out;
}

UnitSequence dedup(const UnitSequence& seq) {
  if (seq.units.empty()) throw EmptyInput("dedup: empty unit sequence");
  UnitSequence out;
  out.deduped = true;
  out.units.reserve(seq.units.size());
  for (int32_t u : seq.units) {
    if (out.units.empty() || out.units.back() != u) out.units.push_back(u);
  }
  return out;
}

std::pair<int64_t, int64_t> frame_span(double start_s, double end_s,
                                       float frame_rate_hz, int64_t n_frames) {
  if (end_s <= start_s) throw RangeError("frame_span: end <= start");
  int64_t lo = static_cast<int64_t>(std::floor(start_s * frame_rate_hz));
  int64_t hi = static_cast<int64_t>(std::ceil(end_s * frame_rate_hz));
  lo = std::max<int64_t>(lo, 0);
  hi = std::min<int64_t>(hi, n_frames);
  return {lo, hi};
}

UnitSequence units_for_clip(const UtteranceRecord& record,
                            const WordAlignment& clip, const FeatureMatrix& feats,
                            const CodebookModel& model) {
  if (clip.start_s < 0 || clip.end_s > record.duration_s + kOverlapEpsilonS) {
    throw RangeError("units_for_clip: clip outside utterance \"" + record.id + "\"");
  }
  const auto [lo, hi] =
      frame_span(clip.start_s, clip.end_s, feats.frame_rate_hz, feats.n_frames());
  if (lo >= hi) {
    throw EmptyInput("units_for_clip: empty frame span for \"" + clip.word + "\"");
  }
  FeatureMatrix window;
  window.frame_rate_hz = feats.frame_rate_hz;
  window.frames = feats.frames.middleRows(lo, hi - lo);
  return dedup(assign_units(window, model));
}

std::string units_to_string(const UnitSequence& seq) {
  std::string out;
  for (size_t i = 0; i < seq.units.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += std::to_string(seq.units[i]);
  }
  return out;
}

void write_unit_file(const std::string& path,
                     const std::vector<std::pair<std::string, UnitSequence>>& rows) {
  std::string out;
  for (const auto& [id, seq] : rows) {
    out += id;
    out.push_back('\t');
    out += units_to_string(seq);
    out.push_back('\n');
  }
  write_file_bytes(path, out);
}

std::vector<std::pair<std::string, UnitSequence>> read_unit_file(
    const std::string& path) {
  std::vector<std::pair<std::string, UnitSequence>> rows;
  for (const std::string& line : read_text_lines(path)) {
    const size_t tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError("unit file: missing tab: " + line);
    UnitSequence seq;
    seq.deduped = true;
    const std::string rest = line.substr(tab + 1);
    size_t pos = 0;
    while (pos < rest.size()) {
      while (pos < rest.size() && rest[pos] == ' ') ++pos;
      if (pos >= rest.size()) break;
      size_t end = rest.find(' ', pos);
      if (end == std::string::npos) end = rest.size();
      try {
        seq.units.push_back(std::stoi(rest.substr(pos, end - pos)));
      } catch (const std::exception&) {
        throw ParseError("unit file: bad integer in line: " + line);
      }
      pos = end;
    }
    rows.emplace_back(line.substr(0, tab), std::move(seq));
  }
  return rows;
}

}  // namespace cskit
