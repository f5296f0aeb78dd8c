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

#include "cskit/vocab.hpp"

#include <cmath>
#include <unordered_set>

#include "cskit/errors.hpp"
#include "cskit/io.hpp"
#include "cskit/rng.hpp"

namespace cskit {

std::string unit_token(int64_t index) {
  return "<|unit_" + std::to_string(index) + "|>";
}

VocabSpec expand_vocab(const std::vector<std::string>& base_tokens,
                       int64_t unit_count) {
  if (unit_count < 1) throw DataError("unit_count must be >= 1");
  std::unordered_set<std::string> base_set;
  for (const std::string& t : base_tokens) {
    if (!base_set.insert(t).second) {
      throw DataError("duplicate base token: \"" + t + "\"");
    }
  }
  for (int64_t i = 0; i < unit_count; ++i) {
    if (base_set.count(unit_token(i)) > 0) {
      throw CollisionError("base vocabulary already contains \"" + unit_token(i) +
                           "\"");
    }
  }
  VocabSpec spec;
  spec.base_size = static_cast<int64_t>(base_tokens.size());
  spec.unit_count = unit_count;
  spec.total = spec.base_size + unit_count;
  return spec;
}

std::vector<std::string> expanded_token_list(
    const std::vector<std::string>& base_tokens, const VocabSpec& spec) {
  std::vector<std::string> out = base_tokens;
  out.reserve(static_cast<size_t>(spec.total));
  for (int64_t i = 0; i < spec.unit_count; ++i) out.push_back(unit_token(i));
  return out;
}

float embedding_std(const EmbeddingMatrix& m) {
  if (m.values.size() == 0) throw DataError("embedding_std: empty matrix");
  const double n = static_cast<double>(m.values.size());
  const double mean = m.values.cast<double>().sum() / n;
  const double var =
      (m.values.cast<double>().array() - mean).square().sum() / n;
  return static_cast<float>(std::sqrt(var));
}

EmbeddingMatrix expand_embeddings(const EmbeddingMatrix& base,
                                  const VocabSpec& spec, uint64_t seed,
                                  float init_std) {
  if (!base.values.allFinite()) {
    throw DataError("expand_embeddings: non-finite base embeddings");
  }
  if (base.rows() != spec.base_size) {
    throw DimensionError("expand_embeddings: base has " +
                         std::to_string(base.rows()) + " rows, vocab expects " +
                         std::to_string(spec.base_size));
  }
  if (!(init_std > 0.0f)) throw DataError("expand_embeddings: init_std must be > 0");

  EmbeddingMatrix out;
  out.values.resize(spec.total, base.dim());
  out.values.topRows(base.rows()) = base.values;

  Rng rng(seed);
  for (Eigen::Index r = base.rows(); r < out.rows(); ++r) {
    for (Eigen::Index c = 0; c < out.dim(); ++c) {
      out.values(r, c) = static_cast<float>(rng.gaussian()) * init_std;
    }
  }
  return out;
}

std::string serialize_embeddings(const EmbeddingMatrix& m) {
  ByteWriter w;
  w.magic("EMBW");
  w.u32(1);
  w.u32(static_cast<uint32_t>(m.rows()));
  w.u32(static_cast<uint32_t>(m.dim()));
  w.u32(0);  // reserved
  w.bytes(m.values.data(), static_cast<size_t>(m.values.size()) * sizeof(float));
  return w.str();
}

void save_embeddings(const std::string& path, const EmbeddingMatrix& m) {
  write_file_bytes(path, serialize_embeddings(m));
}

EmbeddingMatrix parse_embeddings(const std::string& bytes) {
  ByteReader r(bytes);
  r.expect_magic("EMBW", "embeddings");
  const uint32_t version = r.u32();
  if (version != 1) {
    throw ParseError("embeddings: unsupported version " + std::to_string(version));
  }
  const uint32_t rows = r.u32();
  const uint32_t dim = r.u32();
  r.u32();  // reserved
  if (rows == 0 || dim == 0) throw ParseError("embeddings: empty shape");
  const size_t payload = static_cast<size_t>(rows) * dim * sizeof(float);
  if (r.remaining() != payload) {
    throw ParseError("embeddings: payload size disagrees with declared shape");
  }
  EmbeddingMatrix m;
  m.values.resize(rows, dim);
  r.read_into(m.values.data(), payload, "embeddings");
  if (!m.values.allFinite()) throw DataError("embeddings: non-finite values");
  return m;
}

EmbeddingMatrix load_embeddings(const std::string& path) {
  return parse_embeddings(read_file_bytes(path));
}

void write_token_list(const std::string& path,
                      const std::vector<std::string>& tokens) {
  std::string out;
  for (const std::string& t : tokens) {
    out += t;
    out.push_back('\n');
  }
  write_file_bytes(path, out);
}

std::vector<std::string> read_token_list(const std::string& path) {
  return read_text_lines(path);
}

}  // namespace cskit
