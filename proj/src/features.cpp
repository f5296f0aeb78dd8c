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

#include "cskit/features.hpp"

#include "cskit/errors.hpp"
#include "cskit/io.hpp"

namespace cskit {

FeatureMatrix parse_features(const std::string& bytes) {
  ByteReader r(bytes);
  r.expect_magic("SSLF", "features");
  const uint32_t version = r.u32();
  if (version != 1) {
    throw ParseError("features: unsupported version " + std::to_string(version));
  }
  const uint32_t n_frames = r.u32();
  const uint32_t dim = r.u32();
  const float frame_rate = r.f32();
  if (n_frames == 0 || dim == 0) throw ParseError("features: empty shape");
  if (!(frame_rate > 0.0f)) throw ParseError("features: non-positive frame rate");

  const size_t payload = static_cast<size_t>(n_frames) * dim * sizeof(float);
  if (r.remaining() != payload) {
    throw ParseError("features: payload size disagrees with declared shape");
  }
  FeatureMatrix out;
  out.frame_rate_hz = frame_rate;
  out.frames.resize(n_frames, dim);
  r.read_into(out.frames.data(), payload, "features");
  if (!out.frames.allFinite()) {
    throw DataError("features: non-finite values in payload");
  }
  return out;
}

FeatureMatrix read_features(const std::string& path) {
  return parse_features(read_file_bytes(path));
}

std::string serialize_features(const FeatureMatrix& feats) {
  ByteWriter w;
  w.magic("SSLF");
  w.u32(1);
  w.u32(static_cast<uint32_t>(feats.n_frames()));
  w.u32(static_cast<uint32_t>(feats.dim()));
  w.f32(feats.frame_rate_hz);
  w.bytes(feats.frames.data(),
          static_cast<size_t>(feats.frames.size()) * sizeof(float));
  return w.str();
}

void write_features(const std::string& path, const FeatureMatrix& feats) {
  write_file_bytes(path, serialize_features(feats));
}

}  // namespace cskit
