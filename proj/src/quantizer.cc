// src/quantizer.cc

// Copyright 2026  unitaccent authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "unitaccent/quantizer.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <set>

#include "json.hpp"
#include "matrix-container.h"
#include "random.h"
#include "unitaccent/kernels.h"

namespace unitaccent {

using nlohmann::json;

namespace {

constexpr std::string_view kCodebookMagic = "FUC1";

void CheckFinite(std::span<const float> v, const char *what) {
  for (float f : v)
    if (!std::isfinite(f)) throw ValidationError(std::string("non-finite value in ") + what);
}

std::size_t ArgMaxLowest(std::span<const double> v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

// Reseeds every empty cluster to the frame currently farthest from its
// centroid. Frames are moved one at a time, so a donor cluster that loses
// its last frame is picked up on the next sweep.
void RepairEmptyClusters(std::span<std::uint32_t> labels, std::span<double> dist2,
                         std::size_t k) {
  std::vector<std::uint64_t> counts(k, 0);
  for (std::uint32_t l : labels) ++counts[l];
  for (std::size_t sweep = 0; sweep <= k; ++sweep) {
    bool any_empty = false;
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] != 0) continue;
      any_empty = true;
      const std::size_t f = ArgMaxLowest(dist2);
      if (!(dist2[f] > 0.0))
        throw DataError("cannot repair empty cluster: every frame sits on a centroid");
      --counts[labels[f]];
      labels[f] = static_cast<std::uint32_t>(c);
      dist2[f] = 0.0;
      ++counts[c];
    }
    if (!any_empty) return;
  }
}

std::vector<float> NarrowCentroids(std::span<const double> c) {
  std::vector<float> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = static_cast<float>(c[i]);
  return out;
}

double MeanInertia(std::span<const float> frames, std::size_t dims,
                   std::span<const double> centroids) {
  const std::size_t n = frames.size() / dims;
  std::vector<std::uint32_t> labels(n);
  std::vector<double> dist2(n);
  kernels::AssignNearest(frames, dims, centroids, labels, dist2);
  return kernels::ShardedSum(dist2) / static_cast<double>(n);
}

std::vector<double> LloydFullBatch(std::span<const float> frames, std::size_t dims,
                                   std::vector<double> centroids,
                                   const KMeansConfig &cfg, std::uint32_t *iters,
                                   TrainingTrace *trace) {
  const std::size_t n = frames.size() / dims;
  const std::size_t k = cfg.k;
  std::vector<std::uint32_t> labels(n, std::numeric_limits<std::uint32_t>::max());
  std::vector<std::uint32_t> next(n);
  std::vector<double> dist2(n);
  double prev = std::numeric_limits<double>::infinity();
  *iters = 0;
  for (std::uint32_t it = 0; it < cfg.max_iters; ++it) {
    kernels::AssignNearest(frames, dims, centroids, next, dist2);
    const double inertia = kernels::ShardedSum(dist2) / static_cast<double>(n);
    ++*iters;
    if (trace) trace->inertia.push_back(inertia);
    if (next == labels) {
      if (trace) trace->converged = true;
      break;
    }
    RepairEmptyClusters(next, dist2, k);
    const kernels::ClusterStats stats = kernels::Accumulate(frames, dims, next, k);
    for (std::size_t c = 0; c < k; ++c) {
      const double inv = 1.0 / static_cast<double>(stats.counts[c]);
      for (std::size_t d = 0; d < dims; ++d)
        centroids[c * dims + d] = stats.sums[c * dims + d] * inv;
    }
    labels.swap(next);
    if (std::isfinite(prev) && (inertia == 0.0 || prev - inertia < cfg.tol * prev)) {
      if (trace) trace->converged = true;
      break;
    }
    prev = inertia;
  }
  return centroids;
}

std::vector<double> MiniBatch(std::span<const float> frames, std::size_t dims,
                              std::vector<double> centroids,
                              const KMeansConfig &cfg, std::uint32_t *iters,
                              TrainingTrace *trace) {
  const std::size_t n = frames.size() / dims;
  const std::size_t k = cfg.k;
  const std::size_t b = cfg.batch_size;
  const std::size_t batches_per_pass = (n + b - 1) / b;
  internal::Rng rng(internal::MixSeed(cfg.seed, 0x6d62));
  std::vector<std::uint64_t> counts(k, 0);
  std::vector<std::size_t> idx(b);
  std::vector<float> batch(b * dims);
  std::vector<std::uint32_t> bl(b);
  std::vector<double> bd(b);
  double prev = MeanInertia(frames, dims, centroids);
  *iters = 0;
  for (std::uint32_t pass = 0; pass < cfg.max_iters; ++pass) {
    for (std::size_t t = 0; t < batches_per_pass; ++t) {
      for (std::size_t j = 0; j < b; ++j) {
        idx[j] = internal::UniformIndex(rng, n);
        std::memcpy(&batch[j * dims], &frames[idx[j] * dims], dims * sizeof(float));
      }
      kernels::AssignNearest(batch, dims, centroids, bl, bd);
      for (std::size_t j = 0; j < b; ++j) {
        const std::size_t c = bl[j];
        const double eta = 1.0 / static_cast<double>(++counts[c]);
        for (std::size_t d = 0; d < dims; ++d) {
          double &cd = centroids[c * dims + d];
          cd += eta * (static_cast<double>(batch[j * dims + d]) - cd);
        }
      }
      for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] != 0) continue;
        const std::size_t j = ArgMaxLowest(bd);
        if (!(bd[j] > 0.0)) break;
        for (std::size_t d = 0; d < dims; ++d)
          centroids[c * dims + d] = static_cast<double>(batch[j * dims + d]);
        counts[c] = 1;
        bd[j] = 0.0;
      }
    }
    const double inertia = MeanInertia(frames, dims, centroids);
    ++*iters;
    if (trace) trace->inertia.push_back(inertia);
    if (inertia == 0.0 || prev - inertia < cfg.tol * prev) {
      if (trace) trace->converged = true;
      break;
    }
    prev = inertia;
  }
  return centroids;
}

}  // namespace

void KMeansConfig::Validate() const {
  if (k < 1) throw ValidationError("k-means: K must be >= 1");
  if (max_iters < 1) throw ValidationError("k-means: max_iters must be >= 1");
  if (!(tol >= 0.0)) throw ValidationError("k-means: tol must be >= 0");
}

// ---------------------------------------------------------------- codebook

Codebook::Codebook(std::size_t k, std::size_t dims, std::vector<float> centroids,
                   CodebookMeta meta)
    : k_(k), dims_(dims), centroids_(std::move(centroids)), meta_(std::move(meta)) {
  if (k_ == 0) throw ValidationError("codebook needs K >= 1");
  if (dims_ == 0) throw ValidationError("codebook needs dims >= 1");
  if (centroids_.size() != k_ * dims_)
    throw ValidationError("codebook has " + std::to_string(centroids_.size()) +
                          " values, expected " + std::to_string(k_ * dims_));
  CheckFinite(centroids_, "codebook");
  centroids_f64_.assign(centroids_.begin(), centroids_.end());
}

bool Codebook::HasDistinctCentroids() const {
  std::set<std::vector<float>> seen;
  for (std::size_t c = 0; c < k_; ++c) {
    auto row = Centroid(c);
    if (!seen.emplace(row.begin(), row.end()).second) return false;
  }
  return true;
}

bool operator==(const Codebook &a, const Codebook &b) {
  return a.k_ == b.k_ && a.dims_ == b.dims_ && a.meta_ == b.meta_ &&
         std::memcmp(a.centroids_.data(), b.centroids_.data(),
                     a.centroids_.size() * sizeof(float)) == 0;
}

void WriteCodebook(const Codebook &cb, const std::filesystem::path &path) {
  const CodebookMeta &m = cb.meta();
  json meta = {{"seed", m.seed},
               {"iterations_run", m.iterations_run},
               {"final_inertia", m.final_inertia},
               {"training_frame_count", m.training_frame_count},
               {"language", m.language}};
  internal::WriteMatrixContainer(path, kCodebookMagic, cb.k(), cb.dims(),
                                 cb.centroids(), meta);
}

Codebook ReadCodebook(const std::filesystem::path &path) {
  internal::MatrixContainer c = internal::ReadMatrixContainer(path, kCodebookMagic);
  CodebookMeta m;
  try {
    m.seed = c.meta.value("seed", std::uint64_t{0});
    m.iterations_run = c.meta.value("iterations_run", std::uint32_t{0});
    m.final_inertia = c.meta.value("final_inertia", 0.0);
    m.training_frame_count = c.meta.value("training_frame_count", std::uint64_t{0});
    m.language = c.meta.value("language", std::string());
  } catch (const json::exception &e) {
    throw LoadError(LoadErrorKind::kMetadata, path.string(), e.what());
  }
  try {
    return Codebook(c.rows, c.cols, std::move(c.data), std::move(m));
  } catch (const ValidationError &e) {
    throw LoadError(LoadErrorKind::kInvariant, path.string(), e.what());
  }
}

// --------------------------------------------------------------- framepool

FramePool::FramePool(std::optional<std::size_t> max_frames, std::uint64_t seed)
    : max_frames_(max_frames), rng_(internal::MixSeed(seed, 0x7273)) {
  if (max_frames_ && *max_frames_ == 0)
    throw ValidationError("max_frames must be >= 1");
}

void FramePool::Add(const FeatureMatrix &m) {
  if (dims_ == 0) dims_ = m.dims();
  if (m.dims() != dims_)
    throw ShapeError("feature dims " + std::to_string(m.dims()) + " of " +
                     m.utt_id() + " differ from pool dims " + std::to_string(dims_));
  auto data = m.data();
  for (std::size_t r = 0; r < m.rows(); ++r, ++seen_) {
    const float *row = data.data() + r * dims_;
    if (!max_frames_ || size() < *max_frames_) {
      frames_.insert(frames_.end(), row, row + dims_);
      continue;
    }
    // Algorithm R: frame number seen_ replaces slot j with prob max/(seen_+1).
    const std::size_t j = internal::UniformIndex(rng_, static_cast<std::size_t>(seen_ + 1));
    if (j < *max_frames_) std::copy(row, row + dims_, frames_.begin() + j * dims_);
  }
}

// ----------------------------------------------------------------- training

std::vector<double> KMeansPlusPlusInit(std::span<const float> frames,
                                       std::size_t dims, std::size_t k,
                                       std::uint64_t seed) {
  const std::size_t n = frames.size() / dims;
  if (n < k)
    throw DataError("k-means: " + std::to_string(n) + " frames for K = " +
                    std::to_string(k));
  internal::Rng rng(internal::MixSeed(seed, 0x6b2b));
  std::vector<double> centroids;
  centroids.reserve(k * dims);
  auto take = [&](std::size_t i) {
    for (std::size_t d = 0; d < dims; ++d)
      centroids.push_back(static_cast<double>(frames[i * dims + d]));
  };
  take(internal::UniformIndex(rng, n));
  std::vector<double> min_d2(n, std::numeric_limits<double>::infinity());
  kernels::UpdateMinDistance(frames, dims, std::span<const double>(centroids).last(dims),
                             min_d2);
  for (std::size_t c = 1; c < k; ++c) {
    const double total = kernels::ShardedSum(min_d2);
    if (!(total > 0.0))
      throw DataError("k-means: training frames contain fewer than K = " +
                      std::to_string(k) + " distinct points");
    const double r = internal::Uniform01(rng) * total;
    double cum = 0.0;
    std::size_t pick = n;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (min_d2[i] <= 0.0) continue;
      last_positive = i;
      cum += min_d2[i];
      if (cum > r) {
        pick = i;
        break;
      }
    }
    if (pick == n) pick = last_positive;
    take(pick);
    kernels::UpdateMinDistance(frames, dims,
                               std::span<const double>(centroids).last(dims), min_d2);
  }
  return centroids;
}

Codebook TrainCodebook(const FramePool &pool, const KMeansConfig &cfg,
                       const std::string &language, TrainingTrace *trace) {
  cfg.Validate();
  const std::size_t n = pool.size();
  const std::size_t dims = pool.dims();
  if (n < cfg.k)
    throw DataError("k-means: " + std::to_string(n) + " training frames for K = " +
                    std::to_string(cfg.k));
  auto frames = pool.frames();
  if (trace) *trace = TrainingTrace{};

  std::vector<double> centroids = KMeansPlusPlusInit(frames, dims, cfg.k, cfg.seed);
  std::uint32_t iters = 0;
  if (cfg.batch_size == 0)
    centroids = LloydFullBatch(frames, dims, std::move(centroids), cfg, &iters, trace);
  else
    centroids = MiniBatch(frames, dims, std::move(centroids), cfg, &iters, trace);

  std::vector<float> narrow = NarrowCentroids(centroids);
  std::vector<double> widened(narrow.begin(), narrow.end());
  CodebookMeta meta;
  meta.seed = cfg.seed;
  meta.iterations_run = iters;
  meta.final_inertia = MeanInertia(frames, dims, widened);
  meta.training_frame_count = n;
  meta.language = language;
  Codebook cb(cfg.k, dims, std::move(narrow), std::move(meta));
  if (!cb.HasDistinctCentroids())
    throw DataError("k-means: trained codebook has coinciding centroids");
  return cb;
}

Codebook TrainCodebook(std::span<const FeatureMatrix> features,
                       const KMeansConfig &cfg, const std::string &language,
                       TrainingTrace *trace) {
  FramePool pool;
  for (const auto &m : features) pool.Add(m);
  return TrainCodebook(pool, cfg, language, trace);
}

// --------------------------------------------------------------- inference

std::uint32_t Assign(std::span<const float> frame, const Codebook &cb) {
  if (frame.size() != cb.dims())
    throw ShapeError("frame has " + std::to_string(frame.size()) +
                     " dims, codebook has " + std::to_string(cb.dims()));
  CheckFinite(frame, "frame");
  std::uint32_t label;
  double d2;
  kernels::serial::AssignNearest(frame, cb.dims(), cb.centroids_f64(),
                                 std::span<std::uint32_t>(&label, 1),
                                 std::span<double>(&d2, 1));
  return label;
}

UnitSequence Quantize(const FeatureMatrix &m, const Codebook &cb) {
  if (m.dims() != cb.dims())
    throw ShapeError("features " + m.utt_id() + " have " + std::to_string(m.dims()) +
                     " dims, codebook has " + std::to_string(cb.dims()));
  UnitSequence s{m.utt_id(), std::vector<std::uint32_t>(m.rows()),
                 static_cast<std::uint32_t>(cb.k())};
  std::vector<double> dist2(m.rows());
  kernels::AssignNearest(m.data(), m.dims(), cb.centroids_f64(), s.units, dist2);
  return s;
}

double Inertia(std::span<const FeatureMatrix> features, const Codebook &cb) {
  std::vector<double> dist2;
  std::vector<std::uint32_t> labels;
  for (const auto &m : features) {
    if (m.dims() != cb.dims())
      throw ShapeError("features " + m.utt_id() + " have " + std::to_string(m.dims()) +
                       " dims, codebook has " + std::to_string(cb.dims()));
    const std::size_t off = dist2.size();
    dist2.resize(off + m.rows());
    labels.resize(off + m.rows());
    kernels::AssignNearest(m.data(), m.dims(), cb.centroids_f64(),
                           std::span<std::uint32_t>(labels).subspan(off),
                           std::span<double>(dist2).subspan(off));
  }
  if (dist2.empty()) throw DataError("inertia of an empty feature stream");
  return kernels::ShardedSum(dist2) / static_cast<double>(dist2.size());
}

}  // namespace unitaccent
