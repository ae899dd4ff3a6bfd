// unitaccent/kernels.h

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

// Data-parallel inner loops of the toolkit. Every kernel in `kernels` is
// OpenMP-parallel and produces output that does not depend on the thread
// count; `kernels::serial` holds the straightforward single-threaded
// versions they are tested and benchmarked against.
//
// Frames are row-major float [n x dims]; centroids row-major double
// [k x dims]. Distances are squared Euclidean, accumulated in double in
// coordinate order, and ties go to the lowest centroid index.

#ifndef UNITACCENT_KERNELS_H_
#define UNITACCENT_KERNELS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace unitaccent::kernels {

/// Frames per shard for fixed-order reductions. Independent of the worker
/// count, so sharded sums are reproducible.
inline constexpr std::size_t kShardFrames = 4096;

struct ClusterStats {
  std::vector<double> sums;          // k x dims, sum of member frames
  std::vector<std::uint64_t> counts; // k
};

/// Sets workers for subsequent parallel regions (<= 0 leaves the OpenMP
/// default alone). Returns the value now in effect.
int SetWorkers(int workers);
int Workers();

/// labels[i], dist2[i] = nearest centroid of frame i and its squared
/// distance.
void AssignNearest(std::span<const float> frames, std::size_t dims,
                   std::span<const double> centroids,
                   std::span<std::uint32_t> labels, std::span<double> dist2);

/// Per-cluster frame sums and counts. Each cluster's sum is accumulated in
/// ascending frame order, so the result is bit-identical to the serial
/// version regardless of threads.
ClusterStats Accumulate(std::span<const float> frames, std::size_t dims,
                        std::span<const std::uint32_t> labels, std::size_t k);

/// min_dist2[i] = min(min_dist2[i], |frame_i - centroid|^2).
void UpdateMinDistance(std::span<const float> frames, std::size_t dims,
                       std::span<const double> centroid,
                       std::span<double> min_dist2);

/// Sum in kShardFrames-sized shards, shard partials added in shard order.
double ShardedSum(std::span<const double> values);

/// Pearson correlation of every (row i of a, row j of b) pair over the
/// columns where both masks are set. out is a.rows x b.rows; entries with
/// fewer than two shared columns or zero variance are NaN.
void PairwiseCorrelation(std::span<const double> a, std::span<const std::uint8_t> a_mask,
                         std::span<const double> b, std::span<const std::uint8_t> b_mask,
                         std::size_t cols, std::span<double> out);

namespace serial {

void AssignNearest(std::span<const float> frames, std::size_t dims,
                   std::span<const double> centroids,
                   std::span<std::uint32_t> labels, std::span<double> dist2);
ClusterStats Accumulate(std::span<const float> frames, std::size_t dims,
                        std::span<const std::uint32_t> labels, std::size_t k);
void UpdateMinDistance(std::span<const float> frames, std::size_t dims,
                       std::span<const double> centroid,
                       std::span<double> min_dist2);
/// Plain left-to-right sum.
double Sum(std::span<const double> values);
void PairwiseCorrelation(std::span<const double> a, std::span<const std::uint8_t> a_mask,
                         std::span<const double> b, std::span<const std::uint8_t> b_mask,
                         std::size_t cols, std::span<double> out);

}  // namespace serial

/// Pearson correlation of two equal-length vectors; NaN when either has zero
/// variance or length < 2.
double Pearson(std::span<const double> x, std::span<const double> y);

}  // namespace unitaccent::kernels

#endif  // UNITACCENT_KERNELS_H_
