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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "cskit/errors.hpp"
#include "cskit/features.hpp"
#include "cskit/io.hpp"
#include "cskit/kmeans.hpp"
#include "cskit/units.hpp"
#include "test_util.hpp"

using namespace cskit;

namespace {

MatrixRM random_matrix(int rows, int cols, uint64_t seed, float scale = 1.0f) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<float> dist(0.0f, scale);
  MatrixRM m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = dist(gen);
  }
  return m;
}

// Two Gaussian blobs (sigma = 1) with means `separation` apart.
MatrixRM two_blobs(int n_per_blob, int dim, double separation, uint64_t seed,
                   Eigen::RowVectorXf* mean_a = nullptr,
                   Eigen::RowVectorXf* mean_b = nullptr) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<float> noise(0.0f, 1.0f);
  MatrixRM m(2 * n_per_blob, dim);
  Eigen::RowVectorXf a = Eigen::RowVectorXf::Zero(dim);
  Eigen::RowVectorXf b = Eigen::RowVectorXf::Zero(dim);
  b(0) = static_cast<float>(separation);
  for (int i = 0; i < 2 * n_per_blob; ++i) {
    const Eigen::RowVectorXf& mu = i < n_per_blob ? a : b;
    for (int c = 0; c < dim; ++c) m(i, c) = mu(c) + noise(gen);
  }
  if (mean_a) *mean_a = a;
  if (mean_b) *mean_b = b;
  return m;
}

// Full-batch Lloyd iterations to convergence; the independent oracle for
// the minibatch implementation. Initialized from the known blob means.
MatrixRM lloyd_to_convergence(const MatrixRM& data, MatrixRM centroids) {
  for (int iter = 0; iter < 200; ++iter) {
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(centroids.rows(), data.cols());
    std::vector<int64_t> counts(centroids.rows(), 0);
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
      int best = 0;
      float best_d = (data.row(i) - centroids.row(0)).squaredNorm();
      for (Eigen::Index k = 1; k < centroids.rows(); ++k) {
        const float d = (data.row(i) - centroids.row(k)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = static_cast<int>(k);
        }
      }
      sums.row(best) += data.row(i).cast<double>();
      ++counts[best];
    }
    MatrixRM next = centroids;
    for (Eigen::Index k = 0; k < centroids.rows(); ++k) {
      if (counts[k] > 0) {
        next.row(k) = (sums.row(k) / static_cast<double>(counts[k])).cast<float>();
      }
    }
    if ((next - centroids).cwiseAbs().maxCoeff() < 1e-7f) return next;
    centroids = next;
  }
  return centroids;
}

FeatureMatrix as_features(const MatrixRM& m, float rate = 50.0f) {
  FeatureMatrix f;
  f.frames = m;
  f.frame_rate_hz = rate;
  return f;
}

UnitSequence seq_of(std::vector<int32_t> v, bool deduped = false) {
  UnitSequence s;
  s.units = std::move(v);
  s.deduped = deduped;
  return s;
}

}  // namespace

TEST_CASE("feature file round trip is bitwise") {
  cskit_test::TempDir tmp("feat");
  FeatureMatrix f = as_features(random_matrix(17, 9, 5), 50.0f);
  write_features(tmp.file("a.sslf"), f);
  const FeatureMatrix back = read_features(tmp.file("a.sslf"));
  CHECK(back.frame_rate_hz == f.frame_rate_hz);
  REQUIRE(back.frames.rows() == f.frames.rows());
  REQUIRE(back.frames.cols() == f.frames.cols());
  CHECK(std::memcmp(back.frames.data(), f.frames.data(),
                    sizeof(float) * f.frames.size()) == 0);
}

TEST_CASE("feature file: header example and rejects") {
  SUBCASE("2 frames x dim 4 header") {
    FeatureMatrix f = as_features(random_matrix(2, 4, 1));
    const std::string bytes = serialize_features(f);
    CHECK(bytes.size() == 20 + 2 * 4 * 4);
    const FeatureMatrix back = parse_features(bytes);
    CHECK(back.n_frames() == 2);
    CHECK(back.dim() == 4);
  }
  SUBCASE("payload shorter than declared shape") {
    FeatureMatrix f = as_features(random_matrix(3, 4, 2));
    std::string bytes = serialize_features(f);
    bytes.resize(bytes.size() - 16);  // drop one frame
    CHECK_THROWS_AS(parse_features(bytes), ParseError);
  }
  SUBCASE("bad magic") {
    FeatureMatrix f = as_features(random_matrix(2, 2, 3));
    std::string bytes = serialize_features(f);
    bytes[0] = 'X';
    CHECK_THROWS_AS(parse_features(bytes), ParseError);
  }
  SUBCASE("non-finite payload") {
    FeatureMatrix f = as_features(random_matrix(2, 2, 4));
    f.frames(1, 1) = std::numeric_limits<float>::quiet_NaN();
    const std::string bytes = serialize_features(f);
    CHECK_THROWS_AS(parse_features(bytes), DataError);
  }
}

TEST_CASE("train_kmeans: K=1 centroid is the global mean") {
  const MatrixRM data = random_matrix(256, 6, 11, 2.0f);
  KMeansOptions opts;
  opts.k = 1;
  opts.batch_size = 64;
  opts.iterations = 8;  // two full epochs
  opts.seed = 3;
  const CodebookModel model = train_kmeans(data, opts);
  const Eigen::RowVectorXf mean = data.colwise().mean();
  for (int c = 0; c < 6; ++c) {
    CHECK(model.centroids(0, c) ==
          doctest::Approx(mean(c)).epsilon(1e-5));
  }
}

TEST_CASE("train_kmeans: two blobs match the full-batch Lloyd oracle") {
  Eigen::RowVectorXf mean_a, mean_b;
  const MatrixRM data = two_blobs(1000, 8, 10.0, 21, &mean_a, &mean_b);

  KMeansOptions opts;
  opts.k = 2;
  opts.batch_size = 256;
  opts.iterations = 40;
  opts.seed = 5;
  const CodebookModel model = train_kmeans(data, opts);

  MatrixRM init(2, 8);
  init.row(0) = mean_a;
  init.row(1) = mean_b;
  const MatrixRM oracle = lloyd_to_convergence(data, init);

  // match each minibatch centroid to its nearest oracle centroid
  const double sigma = 1.0;
  for (int k = 0; k < 2; ++k) {
    double best = 1e30;
    for (int j = 0; j < 2; ++j) {
      best = std::min<double>(best,
                              (model.centroids.row(k) - oracle.row(j)).norm());
    }
    CHECK(best < 0.1 * sigma);
  }
  // the two centroids must land on different blobs
  CHECK((model.centroids.row(0) - model.centroids.row(1)).norm() > 5.0);
}

TEST_CASE("train_kmeans: held-out inertia does not exceed the init inertia") {
  const MatrixRM data = two_blobs(500, 8, 10.0, 33);
  KMeansOptions opts;
  opts.k = 2;
  opts.batch_size = 128;
  opts.iterations = 30;
  opts.seed = 77;
  const CodebookModel model = train_kmeans(data, opts);
  CHECK(model.meta.inertia_final <= model.meta.inertia_init);
}

TEST_CASE("train_kmeans: determinism, bitwise") {
  const MatrixRM data = random_matrix(300, 5, 8);
  KMeansOptions opts;
  opts.k = 7;
  opts.batch_size = 50;
  opts.iterations = 12;
  opts.seed = 99;
  const CodebookModel a = train_kmeans(data, opts);
  const CodebookModel b = train_kmeans(data, opts);
  CHECK(std::memcmp(a.centroids.data(), b.centroids.data(),
                    sizeof(float) * a.centroids.size()) == 0);
  CHECK(a.meta.inertia_final == b.meta.inertia_final);
}

TEST_CASE("train_kmeans: degenerate data rejected") {
  SUBCASE("fewer frames than clusters") {
    const MatrixRM data = random_matrix(3, 4, 1);
    KMeansOptions opts;
    opts.k = 5;
    CHECK_THROWS_AS(train_kmeans(data, opts), DegenerateData);
  }
  SUBCASE("fewer distinct frames than clusters") {
    MatrixRM data(6, 4);
    for (int i = 0; i < 6; ++i) {
      data.row(i) = Eigen::RowVectorXf::Constant(4, static_cast<float>(i % 3));
    }
    KMeansOptions opts;
    opts.k = 4;
    CHECK_THROWS_AS(train_kmeans(data, opts), DegenerateData);
  }
}

TEST_CASE("codebook file round trip") {
  cskit_test::TempDir tmp("cb");
  const MatrixRM data = random_matrix(100, 4, 2);
  KMeansOptions opts;
  opts.k = 3;
  opts.batch_size = 25;
  opts.iterations = 8;
  opts.seed = 12;
  const CodebookModel model = train_kmeans(data, opts);
  save_codebook(tmp.file("m.kmcb"), model);
  const CodebookModel back = load_codebook(tmp.file("m.kmcb"));
  CHECK(back.k() == 3);
  CHECK(back.dim() == 4);
  CHECK(back.meta.seed == 12);
  CHECK(std::memcmp(back.centroids.data(), model.centroids.data(),
                    sizeof(float) * model.centroids.size()) == 0);

  std::string bytes = read_file_bytes(tmp.file("m.kmcb"));
  CHECK(bytes.size() == 24 + 3 * 4 * 4);
  bytes.resize(bytes.size() - 4);
  write_file_bytes(tmp.file("bad.kmcb"), bytes);
  CHECK_THROWS_AS(load_codebook(tmp.file("bad.kmcb")), ParseError);
}

TEST_CASE("assign_units: exact and tie-break cases") {
  CodebookModel model;
  model.centroids.resize(8, 2);
  for (int k = 0; k < 8; ++k) {
    model.centroids(k, 0) = static_cast<float>(k * 10);
    model.centroids(k, 1) = 0.0f;
  }

  SUBCASE("frame equal to centroid 7") {
    FeatureMatrix f = as_features(MatrixRM(1, 2));
    f.frames << 70.0f, 0.0f;
    const UnitSequence seq = assign_units(f, model);
    REQUIRE(seq.size() == 1);
    CHECK(seq.units[0] == 7);
    CHECK_FALSE(seq.deduped);
  }
  SUBCASE("frame equidistant from centroids 2 and 5 picks 2") {
    CodebookModel tie;
    tie.centroids = MatrixRM::Constant(8, 2, 100.0f);
    tie.centroids.row(2) << 1.0f, 0.0f;
    tie.centroids.row(5) << -1.0f, 0.0f;
    FeatureMatrix f = as_features(MatrixRM(1, 2));
    f.frames << 0.0f, 0.0f;  // squared distance exactly 1 to both
    const UnitSequence seq = assign_units(f, tie);
    CHECK(seq.units[0] == 2);
  }
  SUBCASE("dimension mismatch") {
    FeatureMatrix f = as_features(random_matrix(4, 3, 6));
    CHECK_THROWS_AS(assign_units(f, model), DimensionError);
  }
}

TEST_CASE("assign_units: equals the brute-force scan") {
  CodebookModel model;
  model.centroids = random_matrix(40, 6, 17);
  const FeatureMatrix f = as_features(random_matrix(100, 6, 18));
  const UnitSequence got = assign_units(f, model);

  for (int i = 0; i < 100; ++i) {
    int best = 0;
    float best_d = std::numeric_limits<float>::max();
    for (int k = 0; k < 40; ++k) {
      float d = 0.0f;
      for (int c = 0; c < 6; ++c) {
        const float diff = f.frames(i, c) - model.centroids(k, c);
        d += diff * diff;
      }
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    CHECK(got.units[static_cast<size_t>(i)] == best);
  }

  // assignment optimality, exhaustively
  for (int i = 0; i < 100; ++i) {
    const float assigned =
        (f.frames.row(i) - model.centroids.row(got.units[i])).squaredNorm();
    for (int k = 0; k < 40; ++k) {
      CHECK(assigned <=
            (f.frames.row(i) - model.centroids.row(k)).squaredNorm());
    }
  }
}

TEST_CASE("dedup: examples") {
  CHECK(dedup(seq_of({7, 7, 7, 2, 2, 7})).units == std::vector<int32_t>{7, 2, 7});
  CHECK(dedup(seq_of({3})).units == std::vector<int32_t>{3});
  CHECK(dedup(seq_of({3})).deduped);
  CHECK_THROWS_AS(dedup(seq_of({})), EmptyInput);
}

TEST_CASE("dedup: properties over random sequences") {
  std::mt19937_64 gen(1234);
  for (int trial = 0; trial < 10000; ++trial) {
    const int len = 1 + static_cast<int>(gen() % 40);
    std::vector<int32_t> v(len);
    for (int i = 0; i < len; ++i) v[i] = static_cast<int32_t>(gen() % 5);
    const UnitSequence in = seq_of(v);
    const UnitSequence out = dedup(in);

    // no adjacent duplicates
    for (size_t i = 1; i < out.units.size(); ++i) {
      REQUIRE(out.units[i] != out.units[i - 1]);
    }
    // length can only shrink
    REQUIRE(out.units.size() <= in.units.size());
    // idempotence
    const UnitSequence again = dedup(out);
    REQUIRE(again.units == out.units);
    // subsequence preservation: out is in with runs collapsed
    size_t j = 0;
    for (size_t i = 0; i < in.units.size(); ++i) {
      if (j + 1 < out.units.size() && in.units[i] == out.units[j + 1]) ++j;
      REQUIRE(in.units[i] == out.units[j]);
    }
    REQUIRE(j == out.units.size() - 1);
  }
}

TEST_CASE("frame_span arithmetic") {
  SUBCASE("0.1 s at 50 fps is 5 frames") {
    const auto [lo, hi] = frame_span(0.0, 0.1, 50.0f, 100);
    CHECK(lo == 0);
    CHECK(hi == 5);
  }
  SUBCASE("floor/ceil rule") {
    const auto [lo, hi] = frame_span(0.33, 0.61, 50.0f, 100);
    CHECK(lo == 16);  // floor(16.5)
    CHECK(hi == 31);  // ceil(30.5)
  }
  SUBCASE("clamped to available frames") {
    const auto [lo, hi] = frame_span(1.9, 2.5, 50.0f, 100);
    CHECK(lo == 95);
    CHECK(hi == 100);
  }
}

TEST_CASE("units_for_clip") {
  CodebookModel model;
  model.centroids = random_matrix(6, 4, 55);
  const FeatureMatrix feats = as_features(random_matrix(100, 4, 56), 50.0f);

  UtteranceRecord rec;
  rec.id = "u";
  rec.duration_s = 2.0;

  SUBCASE("whole utterance equals dedup(assign(full))") {
    WordAlignment clip{"w", 0.0, 2.0, Lang::kEn};
    const UnitSequence got = units_for_clip(rec, clip, feats, model);
    const UnitSequence expected = dedup(assign_units(feats, model));
    CHECK(got.units == expected.units);
    CHECK(got.deduped);
  }
  SUBCASE("empty span rejected") {
    UtteranceRecord tiny;
    tiny.id = "t";
    tiny.duration_s = 2.0;
    FeatureMatrix none = as_features(random_matrix(1, 4, 57), 50.0f);
    WordAlignment clip{"w", 1.5, 1.6, Lang::kEn};  // beyond the only frame
    CHECK_THROWS_AS(units_for_clip(tiny, clip, none, model), EmptyInput);
  }
  SUBCASE("clip outside the utterance") {
    WordAlignment clip{"w", 1.5, 2.6, Lang::kEn};
    CHECK_THROWS_AS(units_for_clip(rec, clip, feats, model), RangeError);
  }
}

TEST_CASE("adjacent clips: dedup of concatenation equals boundary collapse") {
  // Two computation orders must agree: dedup(raw_A ++ raw_B) versus
  // dedup(A), dedup(B) joined with the boundary duplicate collapsed.
  CodebookModel model;
  model.centroids = random_matrix(4, 3, 77);
  std::mt19937_64 gen(78);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(gen() % 30);
    const int cut = 1 + static_cast<int>(gen() % (n - 1));
    const FeatureMatrix all = as_features(random_matrix(n, 3, gen()), 50.0f);

    FeatureMatrix a = as_features(all.frames.topRows(cut), 50.0f);
    FeatureMatrix b = as_features(all.frames.bottomRows(n - cut), 50.0f);

    const UnitSequence raw_all = assign_units(all, model);
    const UnitSequence via_concat = dedup(raw_all);

    const UnitSequence da = dedup(assign_units(a, model));
    const UnitSequence db = dedup(assign_units(b, model));
    UnitSequence joined;
    joined.units = da.units;
    for (size_t i = 0; i < db.units.size(); ++i) {
      if (i == 0 && !joined.units.empty() && joined.units.back() == db.units[0]) {
        continue;  // collapse the boundary
      }
      joined.units.push_back(db.units[i]);
    }
    REQUIRE(via_concat.units == joined.units);
  }
}

TEST_CASE("unit file round trip") {
  cskit_test::TempDir tmp("units");
  std::vector<std::pair<std::string, UnitSequence>> rows = {
      {"utt1", seq_of({1, 2, 3}, true)},
      {"utt2", seq_of({42}, true)},
  };
  write_unit_file(tmp.file("u.tsv"), rows);
  const auto back = read_unit_file(tmp.file("u.tsv"));
  REQUIRE(back.size() == 2);
  CHECK(back[0].first == "utt1");
  CHECK(back[0].second.units == std::vector<int32_t>{1, 2, 3});
  CHECK(back[1].first == "utt2");
  CHECK(back[1].second.units == std::vector<int32_t>{42});
}
