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

#include "cskit/kmeans.hpp"

#include <algorithm>
#include <string_view>
#include <unordered_set>

#include "cskit/errors.hpp"
#include "cskit/io.hpp"
#include "cskit/rng.hpp"

namespace cskit {

namespace {

MatrixRM gather_rows(const MatrixRM& m, const std::vector<size_t>& idx) {
  MatrixRM out(static_cast<Eigen::Index>(idx.size()), m.cols());
  for (size_t i = 0; i < idx.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = m.row(static_cast<Eigen::Index>(idx[i]));
  }
  return out;
}

int nearest_row(const MatrixRM& centroids, const Eigen::RowVectorXf& x,
                float* best_dist_out = nullptr) {
  int best = 0;
  float best_dist = (x - centroids.row(0)).squaredNorm();
  for (Eigen::Index k = 1; k < centroids.rows(); ++k) {
    const float d = (x - centroids.row(k)).squaredNorm();
    if (d < best_dist) {  // strict: ties keep the lowest index
      best_dist = d;
      best = static_cast<int>(k);
    }
  }
  if (best_dist_out) *best_dist_out = best_dist;
  return best;
}

// Standard k-means++ over `sample`, one candidate per step.
MatrixRM kmeanspp_init(const MatrixRM& sample, int k, Rng& rng) {
  const Eigen::Index n = sample.rows();
  MatrixRM centroids(k, sample.cols());
  centroids.row(0) = sample.row(static_cast<Eigen::Index>(rng.uniform_index(n)));

  Eigen::VectorXd dist2(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    dist2(i) = (sample.row(i) - centroids.row(0)).squaredNorm();
  }
  for (int j = 1; j < k; ++j) {
    const double total = dist2.sum();
    Eigen::Index chosen;
    if (total <= 0.0) {
      // sample collapsed to already-chosen points; any point works
      chosen = static_cast<Eigen::Index>(rng.uniform_index(n));
    } else {
      const double r = rng.uniform01() * total;
      double cum = 0.0;
      chosen = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        cum += dist2(i);
        if (cum > r) {
          chosen = i;
          break;
        }
      }
    }
    centroids.row(j) = sample.row(chosen);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double d = (sample.row(i) - centroids.row(j)).squaredNorm();
      dist2(i) = std::min(dist2(i), d);
    }
  }
  return centroids;
}

size_t count_distinct_rows(const MatrixRM& m, size_t stop_at) {
  std::unordered_set<std::string_view> seen;
  const size_t row_bytes = static_cast<size_t>(m.cols()) * sizeof(float);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    seen.insert(std::string_view(
        reinterpret_cast<const char*>(m.row(i).data()), row_bytes));
    if (seen.size() >= stop_at) break;
  }
  return seen.size();
}

}  // namespace

double inertia(const MatrixRM& rows, const MatrixRM& centroids) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    float d = 0.0f;
    nearest_row(centroids, rows.row(i), &d);
    total += d;
  }
  return total;
}

CodebookModel train_kmeans(const MatrixRM& frames, const KMeansOptions& opts) {
  const Eigen::Index n = frames.rows();
  const Eigen::Index d = frames.cols();
  if (opts.k < 1) throw DegenerateData("k must be >= 1");
  if (opts.batch_size < 1 || opts.iterations < 1) {
    throw DataError("batch_size and iterations must be >= 1");
  }
  if (n < opts.k) {
    throw DegenerateData("fewer frames (" + std::to_string(n) + ") than clusters (" +
                         std::to_string(opts.k) + ")");
  }
  if (count_distinct_rows(frames, static_cast<size_t>(opts.k)) <
      static_cast<size_t>(opts.k)) {
    throw DegenerateData("fewer distinct frames than clusters");
  }

  Rng rng(opts.seed);

  // RNG draw order is part of the determinism contract:
  // eval sample, init sample, k-means++, then per-epoch shuffles.
  const size_t eval_size = std::min<size_t>(static_cast<size_t>(n), 4096);
  const MatrixRM eval_rows =
      gather_rows(frames, rng.sample_without_replacement(n, eval_size));

  const size_t init_size = std::min<size_t>(
      static_cast<size_t>(n),
      std::max<size_t>(3 * static_cast<size_t>(opts.batch_size),
                       10 * static_cast<size_t>(opts.k)));
  const MatrixRM init_sample =
      gather_rows(frames, rng.sample_without_replacement(n, init_size));

  CodebookModel model;
  model.centroids = kmeanspp_init(init_sample, opts.k, rng);
  model.meta.seed = opts.seed;
  model.meta.batch_size = opts.batch_size;
  model.meta.iterations = opts.iterations;
  model.meta.inertia_init = inertia(eval_rows, model.centroids);

  std::vector<size_t> order(static_cast<size_t>(n));
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);
  size_t cursor = 0;

  std::vector<int64_t> counts(static_cast<size_t>(opts.k), 0);
  std::vector<int> assign(static_cast<size_t>(opts.batch_size));
  Eigen::MatrixXd sums(opts.k, d);
  std::vector<int64_t> batch_counts(static_cast<size_t>(opts.k));

  for (int it = 0; it < opts.iterations; ++it) {
    const int bsz = static_cast<int>(
        std::min<size_t>(static_cast<size_t>(opts.batch_size), order.size()));
    std::vector<size_t> batch(static_cast<size_t>(bsz));
    for (int b = 0; b < bsz; ++b) {
      if (cursor >= order.size()) {
        rng.shuffle(order);
        cursor = 0;
      }
      batch[static_cast<size_t>(b)] = order[cursor++];
    }

    sums.setZero();
    std::fill(batch_counts.begin(), batch_counts.end(), 0);
    for (int b = 0; b < bsz; ++b) {
      const Eigen::RowVectorXf x = frames.row(static_cast<Eigen::Index>(batch[b]));
      const int c = nearest_row(model.centroids, x);
      assign[static_cast<size_t>(b)] = c;
      sums.row(c) += x.cast<double>();
      ++batch_counts[static_cast<size_t>(c)];
    }
    for (int c = 0; c < opts.k; ++c) {
      if (batch_counts[static_cast<size_t>(c)] == 0) continue;
      const int64_t new_count = counts[static_cast<size_t>(c)] +
                                batch_counts[static_cast<size_t>(c)];
      // streaming mean: c' = c + (sum - m*c) / (count + m)
      const Eigen::RowVectorXd cur = model.centroids.row(c).cast<double>();
      const Eigen::RowVectorXd updated =
          cur + (sums.row(c) - static_cast<double>(batch_counts[c]) * cur) /
                    static_cast<double>(new_count);
      model.centroids.row(c) = updated.cast<float>();
      counts[static_cast<size_t>(c)] = new_count;
    }

    // Reseed clusters that have never received a point from the farthest
    // batch points (distance to their assigned centroid, descending).
    std::vector<int> empty;
    for (int c = 0; c < opts.k; ++c) {
      if (counts[static_cast<size_t>(c)] == 0) empty.push_back(c);
    }
    if (!empty.empty()) {
      std::vector<std::pair<float, int>> far;  // (-dist, batch slot)
      far.reserve(static_cast<size_t>(bsz));
      for (int b = 0; b < bsz; ++b) {
        const Eigen::RowVectorXf x = frames.row(static_cast<Eigen::Index>(batch[b]));
        const float dist =
            (x - model.centroids.row(assign[static_cast<size_t>(b)])).squaredNorm();
        far.emplace_back(-dist, b);
      }
      std::sort(far.begin(), far.end());
      size_t take = 0;
      for (int c : empty) {
        if (take >= far.size()) break;
        model.centroids.row(c) =
            frames.row(static_cast<Eigen::Index>(batch[far[take].second]));
        counts[static_cast<size_t>(c)] = 1;
        ++take;
      }
    }
  }

  model.meta.inertia_final = inertia(eval_rows, model.centroids);
  return model;
}

CodebookModel train_kmeans_files(const std::vector<std::string>& feature_files,
                                 const KMeansOptions& opts) {
  if (feature_files.empty()) throw EmptyInput("train_kmeans: no feature files");
  std::vector<FeatureMatrix> mats;
  mats.reserve(feature_files.size());
  Eigen::Index total = 0;
  for (const std::string& path : feature_files) {
    mats.push_back(read_features(path));
    if (mats.front().dim() != mats.back().dim()) {
      throw DimensionError("train_kmeans: feature dims differ across files");
    }
    total += mats.back().n_frames();
  }
  MatrixRM all(total, mats.front().dim());
  Eigen::Index row = 0;
  for (const FeatureMatrix& m : mats) {
    all.middleRows(row, m.n_frames()) = m.frames;
    row += m.n_frames();
  }
  return train_kmeans(all, opts);
}

std::vector<int32_t> nearest_centroids(const MatrixRM& frames,
                                       const CodebookModel& model) {
  if (frames.cols() != model.dim()) {
    throw DimensionError("assign: feature dim " + std::to_string(frames.cols()) +
                         " != codebook dim " + std::to_string(model.dim()));
  }
  std::vector<int32_t> out(static_cast<size_t>(frames.rows()));
  for (Eigen::Index i = 0; i < frames.rows(); ++i) {
    out[static_cast<size_t>(i)] = nearest_row(model.centroids, frames.row(i));
  }
  return out;
}

void save_codebook(const std::string& path, const CodebookModel& model) {
  ByteWriter w;
  w.magic("KMCB");
  w.u32(1);
  w.u32(static_cast<uint32_t>(model.k()));
  w.u32(static_cast<uint32_t>(model.dim()));
  w.u64(model.meta.seed);
  w.bytes(model.centroids.data(),
          static_cast<size_t>(model.centroids.size()) * sizeof(float));
  write_file_bytes(path, w.str());
}

CodebookModel load_codebook(const std::string& path) {
  const std::string bytes = read_file_bytes(path);
  ByteReader r(bytes);
  r.expect_magic("KMCB", "codebook");
  const uint32_t version = r.u32();
  if (version != 1) {
    throw ParseError("codebook: unsupported version " + std::to_string(version));
  }
  const uint32_t k = r.u32();
  const uint32_t dim = r.u32();
  const uint64_t seed = r.u64();
  if (k == 0 || dim == 0) throw ParseError("codebook: empty shape");
  const size_t payload = static_cast<size_t>(k) * dim * sizeof(float);
  if (r.remaining() != payload) {
    throw ParseError("codebook: payload size disagrees with declared shape");
  }
  CodebookModel model;
  model.centroids.resize(k, dim);
  r.read_into(model.centroids.data(), payload, "codebook");
  if (!model.centroids.allFinite()) throw DataError("codebook: non-finite centroids");
  model.meta.seed = seed;
  return model;
}

}  // namespace cskit
