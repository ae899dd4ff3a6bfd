// src/kernels-serial.cc

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

// Reference implementations. Kept deliberately plain: one loop nest each,
// no sharding, no sorting.

#include <limits>

#include "unitaccent/kernels.h"

namespace unitaccent::kernels::serial {

void AssignNearest(std::span<const float> frames, std::size_t dims,
                   std::span<const double> centroids,
                   std::span<std::uint32_t> labels, std::span<double> dist2) {
  const std::size_t n = frames.size() / dims;
  const std::size_t k = centroids.size() / dims;
  for (std::size_t i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t best_c = 0;
    for (std::size_t c = 0; c < k; ++c) {
      double d2 = 0.0;
      for (std::size_t d = 0; d < dims; ++d) {
        const double diff = static_cast<double>(frames[i * dims + d]) -
                            centroids[c * dims + d];
        d2 += diff * diff;
      }
      if (d2 < best) {
        best = d2;
        best_c = static_cast<std::uint32_t>(c);
      }
    }
    labels[i] = best_c;
    dist2[i] = best;
  }
}

ClusterStats Accumulate(std::span<const float> frames, std::size_t dims,
                        std::span<const std::uint32_t> labels, std::size_t k) {
  ClusterStats stats;
  stats.sums.assign(k * dims, 0.0);
  stats.counts.assign(k, 0);
  const std::size_t n = frames.size() / dims;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t c = labels[i];
    ++stats.counts[c];
    for (std::size_t d = 0; d < dims; ++d)
      stats.sums[c * dims + d] += static_cast<double>(frames[i * dims + d]);
  }
  return stats;
}

void UpdateMinDistance(std::span<const float> frames, std::size_t dims,
                       std::span<const double> centroid,
                       std::span<double> min_dist2) {
  const std::size_t n = frames.size() / dims;
  for (std::size_t i = 0; i < n; ++i) {
    double d2 = 0.0;
    for (std::size_t d = 0; d < dims; ++d) {
      const double diff = static_cast<double>(frames[i * dims + d]) - centroid[d];
      d2 += diff * diff;
    }
    if (d2 < min_dist2[i]) min_dist2[i] = d2;
  }
}

double Sum(std::span<const double> values) {
  double acc = 0.0;
  for (double v : values) acc += v;
  return acc;
}

void PairwiseCorrelation(std::span<const double> a, std::span<const std::uint8_t> a_mask,
                         std::span<const double> b, std::span<const std::uint8_t> b_mask,
                         std::size_t cols, std::span<double> out) {
  const std::size_t na = a.size() / cols, nb = b.size() / cols;
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      std::vector<double> xs, ys;
      for (std::size_t c = 0; c < cols; ++c) {
        if (a_mask[i * cols + c] && b_mask[j * cols + c]) {
          xs.push_back(a[i * cols + c]);
          ys.push_back(b[j * cols + c]);
        }
      }
      out[i * nb + j] = Pearson(xs, ys);
    }
  }
}

}  // namespace unitaccent::kernels::serial
