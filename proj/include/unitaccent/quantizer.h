// unitaccent/quantizer.h

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

// Speech-to-unit discretisation: a K-centroid codebook learned with k-means
// over one language's feature frames, and nearest-centroid unit assignment.
//
// Training is k-means++ seeding followed by either full-batch Lloyd
// iterations (batch_size == 0) or minibatch online-mean updates. Distances
// are squared Euclidean on raw features. Given the same frames and seed the
// codebook is bit-identical for any worker count.
//
// Codebook file (FUC1), little-endian:
//   "FUC1" | K u32 | dims u32 | K*dims f32 | meta_len u32 | meta JSON

#ifndef UNITACCENT_QUANTIZER_H_
#define UNITACCENT_QUANTIZER_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "unitaccent/featio.h"
#include "unitaccent/unitops.h"

namespace unitaccent {

struct KMeansConfig {
  std::uint32_t k = 50;
  std::uint64_t seed = 0;
  // Lloyd iterations in full-batch mode; evaluation passes (each about
  // frames/batch_size minibatches) in minibatch mode.
  std::uint32_t max_iters = 100;
  std::uint32_t batch_size = 0;  // 0 = full batch
  // Stop when (prev - cur) / prev inertia improvement drops below tol.
  double tol = 1e-4;

  void Validate() const;
};

struct CodebookMeta {
  std::uint64_t seed = 0;
  std::uint32_t iterations_run = 0;
  double final_inertia = 0.0;
  std::uint64_t training_frame_count = 0;
  std::string language;

  friend bool operator==(const CodebookMeta &a, const CodebookMeta &b) = default;
};

class Codebook {
 public:
  /// Throws ValidationError if k == 0, dims == 0, the size is wrong or any
  /// centroid value is non-finite.
  Codebook(std::size_t k, std::size_t dims, std::vector<float> centroids,
           CodebookMeta meta = {});

  std::size_t k() const { return k_; }
  std::size_t dims() const { return dims_; }
  std::span<const float> centroids() const { return centroids_; }
  std::span<const float> Centroid(std::size_t unit) const {
    return std::span<const float>(centroids_).subspan(unit * dims_, dims_);
  }
  /// Centroids widened to double, the form the kernels consume.
  std::span<const double> centroids_f64() const { return centroids_f64_; }
  const CodebookMeta &meta() const { return meta_; }

  bool HasDistinctCentroids() const;

  /// Bit-exact on centroids; meta compared field by field.
  friend bool operator==(const Codebook &a, const Codebook &b);

 private:
  std::size_t k_;
  std::size_t dims_;
  std::vector<float> centroids_;
  std::vector<double> centroids_f64_;
  CodebookMeta meta_;
};

void WriteCodebook(const Codebook &cb, const std::filesystem::path &path);
Codebook ReadCodebook(const std::filesystem::path &path);

/// Contiguous pool of training frames gathered from many utterances. With
/// max_frames set, keeps a seeded uniform reservoir sample of that size.
class FramePool {
 public:
  FramePool() = default;
  FramePool(std::optional<std::size_t> max_frames, std::uint64_t seed);

  /// Throws ShapeError if m.dims() differs from earlier matrices.
  void Add(const FeatureMatrix &m);

  std::size_t size() const { return dims_ ? frames_.size() / dims_ : 0; }
  std::size_t dims() const { return dims_; }
  std::uint64_t frames_seen() const { return seen_; }
  std::span<const float> frames() const { return frames_; }

 private:
  std::optional<std::size_t> max_frames_;
  std::mt19937_64 rng_;
  std::size_t dims_ = 0;
  std::uint64_t seen_ = 0;
  std::vector<float> frames_;
};

/// Mean inertia after each assignment pass, in order.
struct TrainingTrace {
  std::vector<double> inertia;
  bool converged = false;
};

/// k-means++ seeding over frames [n x dims]: k centroids (row-major, double).
/// Throws DataError if the frames hold fewer than k distinct points.
std::vector<double> KMeansPlusPlusInit(std::span<const float> frames,
                                       std::size_t dims, std::size_t k,
                                       std::uint64_t seed);

Codebook TrainCodebook(const FramePool &pool, const KMeansConfig &cfg,
                       const std::string &language = {},
                       TrainingTrace *trace = nullptr);
Codebook TrainCodebook(std::span<const FeatureMatrix> features,
                       const KMeansConfig &cfg,
                       const std::string &language = {},
                       TrainingTrace *trace = nullptr);

/// Index of the nearest centroid, lowest index on ties.
std::uint32_t Assign(std::span<const float> frame, const Codebook &cb);
UnitSequence Quantize(const FeatureMatrix &m, const Codebook &cb);
/// Mean squared distance of every frame to its nearest centroid. Throws
/// DataError when there are no frames at all.
double Inertia(std::span<const FeatureMatrix> features, const Codebook &cb);

}  // namespace unitaccent

#endif  // UNITACCENT_QUANTIZER_H_
