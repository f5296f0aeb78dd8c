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

#ifndef CSKIT_TEXTGRID_HPP_
#define CSKIT_TEXTGRID_HPP_

#include <string>
#include <vector>

#include "cskit/common.hpp"

namespace cskit {

// Parses a Praat long-form ("ooTextFile") TextGrid and returns the
// non-empty intervals of the tier named "words", in tier order. Empty
// labels (silence) are dropped. The short TextGrid dialect is rejected.
// The parser is total: it either returns the full alignment list or
// throws ParseError; it never returns a partial result.
std::vector<WordAlignment> parse_textgrid(const std::string& content,
                                          Lang language);

}  // namespace cskit

#endif  // CSKIT_TEXTGRID_HPP_
