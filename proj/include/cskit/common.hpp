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

#ifndef CSKIT_COMMON_HPP_
#define CSKIT_COMMON_HPP_

#include <string>

#include "cskit/errors.hpp"

namespace cskit {

inline constexpr const char* kVersion = "0.1.0";

// Corpus records carry exactly kEn or kZh; kCs exists for evaluation text
// and task records built from constructed samples.
enum class Lang { kEn, kZh, kCs };

inline std::string lang_to_string(Lang lang) {
  switch (lang) {
    case Lang::kEn: return "en";
    case Lang::kZh: return "zh";
    case Lang::kCs: return "cs";
  }
  throw DataError("invalid language tag");
}

inline Lang lang_from_string(const std::string& s, bool allow_cs = false) {
  if (s == "en") return Lang::kEn;
  if (s == "zh") return Lang::kZh;
  if (allow_cs && s == "cs") return Lang::kCs;
  throw ParseError("unknown language code: \"" + s + "\"");
}

// One aligned word (or, for unsegmented Mandarin, one character).
struct WordAlignment {
  std::string word;
  double start_s = 0.0;
  double end_s = 0.0;
  Lang language = Lang::kEn;
};

// Forced aligners jitter interval boundaries below one frame; spans closer
// than this are treated as non-overlapping.
inline constexpr double kOverlapEpsilonS = 1e-3;

}  // namespace cskit

#endif  // CSKIT_COMMON_HPP_
