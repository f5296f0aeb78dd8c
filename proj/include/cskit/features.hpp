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

#ifndef CSKIT_FEATURES_HPP_
#define CSKIT_FEATURES_HPP_

#include <Eigen/Core>
#include <string>

namespace cskit {

// All dense float data in this toolkit is row-major so matrices map 1:1
// onto the binary file payloads.
using MatrixRM =
    Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr float kDefaultFrameRateHz = 50.0f;

// Frame-level SSL representations for one utterance, read from a file.
struct FeatureMatrix {
  MatrixRM frames;
  float frame_rate_hz = kDefaultFrameRateHz;

  Eigen::Index n_frames() const { return frames.rows(); }
  Eigen::Index dim() const { return frames.cols(); }
};

// SSLF: "SSLF" u32 version=1, u32 n_frames, u32 dim, f32 frame_rate, then
// n_frames*dim little-endian f32 row-major. Non-finite payloads raise
// DataError, structural problems ParseError.
FeatureMatrix read_features(const std::string& path);
FeatureMatrix parse_features(const std::string& bytes);

void write_features(const std::string& path, const FeatureMatrix& feats);
std::string serialize_features(const FeatureMatrix& feats);

}  // namespace cskit

#endif  // CSKIT_FEATURES_HPP_
