// src/kernels.cc

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

#include "unitaccent/kernels.h"

#include <omp.h>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace unitaccent::kernels {

namespace {

inline double SquaredDistance(const float *x, const double *c, std::size_t dims) {
  double acc = 0.0;
  for (std::size_t d = 0; d < dims; ++d) {
    const double diff = static_cast<double>(x[d]) - c[d];
    acc += diff * diff;
  }
  return acc;
}

}  // namespace

int SetWorkers(int workers) {
  if (workers > 0) omp_set_num_threads(workers);
  return omp_get_max_threads();
}

int Workers() { return omp_get_max_threads(); }

void AssignNearest(std::span<const float> frames, std::size_t dims,
                   std::span<const double> centroids,
                   std::span<std::uint32_t> labels, std::span<double> dist2) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(frames.size() / dims);
  const std::size_t k = centroids.size() / dims;
  assert(labels.size() >= static_cast<std::size_t>(n));
  assert(dist2.size() >= static_cast<std::size_t>(n));
  const float *fx = frames.data();
  const double *cx = centroids.data();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const float *x = fx + static_cast<std::size_t>(i) * dims;
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t best_c = 0;
    for (std::size_t c = 0; c < k; ++c) {
      const double d = SquaredDistance(x, cx + c * dims, dims);
      if (d < best) {
        best = d;
        best_c = static_cast<std::uint32_t>(c);
      }
    }
    labels[i] = best_c;
    dist2[i] = best;
  }
}

ClusterStats Accumulate(std::span<const float> frames, std::size_t dims,
                        std::span<const std::uint32_t> labels, std::size_t k) {
  const std::size_t n = frames.size() / dims;
  ClusterStats stats;
  stats.sums.assign(k * dims, 0.0);
  stats.counts.assign(k, 0);
  for (std::size_t i = 0; i < n; ++i) {
    assert(labels[i] < k);
    ++stats.counts[labels[i]];
  }
  // Counting sort of frame indices by label, stable in frame order.
  std::vector<std::size_t> offset(k + 1, 0);
  for (std::size_t c = 0; c < k; ++c) offset[c + 1] = offset[c] + stats.counts[c];
  std::vector<std::size_t> order(n);
  {
    std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
    for (std::size_t i = 0; i < n; ++i) order[fill[labels[i]]++] = i;
  }
  const float *fx = frames.data();
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(k); ++c) {
    double *sum = stats.sums.data() + static_cast<std::size_t>(c) * dims;
    for (std::size_t j = offset[c]; j < offset[c + 1]; ++j) {
      const float *x = fx + order[j] * dims;
      for (std::size_t d = 0; d < dims; ++d) sum[d] += static_cast<double>(x[d]);
    }
  }
  return stats;
}

void UpdateMinDistance(std::span<const float> frames, std::size_t dims,
                       std::span<const double> centroid,
                       std::span<double> min_dist2) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(frames.size() / dims);
  const float *fx = frames.data();
  const double *c = centroid.data();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double d = SquaredDistance(fx + static_cast<std::size_t>(i) * dims, c, dims);
    if (d < min_dist2[i]) min_dist2[i] = d;
  }
}

double ShardedSum(std::span<const double> values) {
  const std::size_t n = values.size();
  const std::size_t shards = (n + kShardFrames - 1) / kShardFrames;
  std::vector<double> partial(shards, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(shards); ++s) {
    const std::size_t lo = static_cast<std::size_t>(s) * kShardFrames;
    const std::size_t hi = std::min(n, lo + kShardFrames);
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += values[i];
    partial[s] = acc;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

double Pearson(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  const double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

namespace {

double MaskedPearson(const double *a, const std::uint8_t *am, const double *b,
                     const std::uint8_t *bm, std::size_t cols,
                     std::vector<double> *xs, std::vector<double> *ys) {
  xs->clear();
  ys->clear();
  for (std::size_t c = 0; c < cols; ++c) {
    if (am[c] && bm[c]) {
      xs->push_back(a[c]);
      ys->push_back(b[c]);
    }
  }
  return Pearson(*xs, *ys);
}

}  // namespace

void PairwiseCorrelation(std::span<const double> a, std::span<const std::uint8_t> a_mask,
                         std::span<const double> b, std::span<const std::uint8_t> b_mask,
                         std::size_t cols, std::span<double> out) {
  const std::size_t na = a.size() / cols, nb = b.size() / cols;
  const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(na * nb);
#pragma omp parallel
  {
    std::vector<double> xs, ys;
#pragma omp for schedule(static)
    for (std::ptrdiff_t p = 0; p < total; ++p) {
      const std::size_t i = static_cast<std::size_t>(p) / nb;
      const std::size_t j = static_cast<std::size_t>(p) % nb;
      out[p] = MaskedPearson(a.data() + i * cols, a_mask.data() + i * cols,
                             b.data() + j * cols, b_mask.data() + j * cols,
                             cols, &xs, &ys);
    }
  }
}

}  // namespace unitaccent::kernels
