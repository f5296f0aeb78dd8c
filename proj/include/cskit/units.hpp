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

#ifndef CSKIT_UNITS_HPP_
#define CSKIT_UNITS_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cskit/corpus.hpp"
#include "cskit/features.hpp"
#include "cskit/kmeans.hpp"

namespace cskit {

// Discrete speech units: cluster indices in [0, K), optionally run-length
// de-duplicated (no two adjacent equal values).
struct UnitSequence {
  std::vector<int32_t> units;
  bool deduped = false;

  size_t size() const { return units.size(); }
};

// Cluster index per frame; deduped=false.
UnitSequence assign_units(const FeatureMatrix& feats, const CodebookModel& model);

// Run-length collapse of adjacent equal units.
UnitSequence dedup(const UnitSequence& seq);

// Frame window [floor(start*rate), ceil(end*rate)) clamped to n_frames.
std::pair<int64_t, int64_t> frame_span(double start_s, double end_s,
                                       float frame_rate_hz, int64_t n_frames);

// Units for one aligned clip of an utterance: the clip's frame window,
// assigned and deduped.
UnitSequence units_for_clip(const UtteranceRecord& record,
                            const WordAlignment& clip, const FeatureMatrix& feats,
                            const CodebookModel& model);

// Unit file: one utterance per line, "<id>\t<space-separated integers>".
void write_unit_file(const std::string& path,
                     const std::vector<std::pair<std::string, UnitSequence>>& rows);
std::vector<std::pair<std::string, UnitSequence>> read_unit_file(
    const std::string& path);

std::string units_to_string(const UnitSequence& seq);

}  // namespace cskit

#endif  // CSKIT_UNITS_HPP_
