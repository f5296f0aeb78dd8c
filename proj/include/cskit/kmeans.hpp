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

#ifndef CSKIT_KMEANS_HPP_
#define CSKIT_KMEANS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "cskit/features.hpp"

namespace cskit {

struct TrainingMeta {
  uint64_t seed = 0;
  int batch_size = 0;
  int iterations = 0;
  double inertia_init = 0.0;   // k-means++ centroids, held-out sample
  double inertia_final = 0.0;  // trained centroids, same sample
};

struct CodebookModel {
  MatrixRM centroids;  // K x dim
  TrainingMeta meta;

  Eigen::Index k() const { return centroids.rows(); }
  Eigen::Index dim() const { return centroids.cols(); }
};

struct KMeansOptions {
  int k = 1000;
  int batch_size = 1024;
  int iterations = 100;  // number of minibatch updates
  uint64_t seed = 0;
};

// Minibatch k-means with k-means++ initialization on a seeded sample and
// per-centroid 1/count learning rates. Batches cycle through seeded
// per-epoch permutations (each epoch visits every frame once), which makes
// the result the exact streaming mean per cluster over whole epochs.
// Entirely sequential; same inputs and seed give bit-identical centroids.
CodebookModel train_kmeans(const MatrixRM& frames, const KMeansOptions& opts);

// Convenience: loads and stacks feature files (dims must agree).
CodebookModel train_kmeans_files(const std::vector<std::string>& feature_files,
                                 const KMeansOptions& opts);

// Sum of squared distances to the nearest centroid over `rows`.
double inertia(const MatrixRM& rows, const MatrixRM& centroids);

// Nearest centroid per frame (squared Euclidean); ties break to the lowest
// centroid index.
std::vector<int32_t> nearest_centroids(const MatrixRM& frames,
                                       const CodebookModel& model);

// KMCB: "KMCB" u32 version=1, u32 K, u32 dim, u64 seed, K*dim f32 row-major.
void save_codebook(const std::string& path, const CodebookModel& model);
CodebookModel load_codebook(const std::string& path);

}  // namespace cskit

#endif  // CSKIT_KMEANS_HPP_
