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

#ifndef CSKIT_TEXT_HPP_
#define CSKIT_TEXT_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace cskit {

// Decodes one UTF-8 sequence starting at s[pos]. Returns the codepoint and
// advances pos past it. Malformed sequences raise ParseError.
uint32_t utf8_next(const std::string& s, size_t& pos);

// Splits a UTF-8 string into per-codepoint substrings.
std::vector<std::string> utf8_chars(const std::string& s);

std::vector<uint32_t> utf8_codepoints(const std::string& s);

std::string utf8_encode(uint32_t cp);

// Han ideographs (URO + extensions + compatibility block).
bool is_cjk(uint32_t cp);

}  // namespace cskit

#endif  // CSKIT_TEXT_HPP_
