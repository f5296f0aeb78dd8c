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

#ifndef CSKIT_VOCAB_HPP_
#define CSKIT_VOCAB_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "cskit/features.hpp"

namespace cskit {

// Expanded vocabulary layout: base tokens keep their indices, unit tokens
// "<|unit_i|>" follow at base_size + i.
struct VocabSpec {
  int64_t base_size = 0;
  int64_t unit_count = 0;
  int64_t total = 0;
  std::string unit_token_pattern = "<|unit_{i}|>";
};

std::string unit_token(int64_t index);

// Builds the expanded vocabulary. Unit token strings must be disjoint from
// every base token; a collision fails loudly.
VocabSpec expand_vocab(const std::vector<std::string>& base_tokens,
                       int64_t unit_count);

// Full expanded token list, base tokens first (index = line position).
std::vector<std::string> expanded_token_list(
    const std::vector<std::string>& base_tokens, const VocabSpec& spec);

// Rows x dim embedding table; values finite.
struct EmbeddingMatrix {
  MatrixRM values;

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index dim() const { return values.cols(); }
};

// Expanded table: the first base rows are copied bitwise from `base`; the
// remaining unit rows are i.i.d. Gaussian(0, init_std^2) from the seeded
// generator, filled row by row.
EmbeddingMatrix expand_embeddings(const EmbeddingMatrix& base,
                                  const VocabSpec& spec, uint64_t seed,
                                  float init_std);

// Population standard deviation over all entries; the default init scale.
float embedding_std(const EmbeddingMatrix& m);

// EMBW: "EMBW" u32 version=1, u32 rows, u32 dim, u32 reserved=0, then
// rows*dim little-endian f32 row-major.
void save_embeddings(const std::string& path, const EmbeddingMatrix& m);
std::string serialize_embeddings(const EmbeddingMatrix& m);
EmbeddingMatrix load_embeddings(const std::string& path);
EmbeddingMatrix parse_embeddings(const std::string& bytes);

void write_token_list(const std::string& path,
                      const std::vector<std::string>& tokens);
std::vector<std::string> read_token_list(const std::string& path);

}  // namespace cskit

#endif  // CSKIT_VOCAB_HPP_
