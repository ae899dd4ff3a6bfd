// bench/bench-kernels.cc

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

// Times the OpenMP kernels against their serial references, and a full
// k-means training run, over a range of worker counts. Each parallel result
// is compared with the serial one before its time is reported.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <vector>

#include "CLI11.hpp"
#include "unitaccent/kernels.h"
#include "unitaccent/quantizer.h"

namespace kernels = unitaccent::kernels;

namespace {

double MedianMs(int reps, const std::function<void()> &fn) {
  std::vector<double> ms;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    ms.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                     .count());
  }
  std::nth_element(ms.begin(), ms.begin() + ms.size() / 2, ms.end());
  return ms[ms.size() / 2];
}

void Row(const char *kernel, const char *mode, int workers, double ms, double serial_ms,
         bool match) {
  std::printf("%-20s %-8s %7d %12.3f %9.2fx  %s\n", kernel, mode, workers, ms, serial_ms / ms,
              match ? "ok" : "MISMATCH");
}

}  // namespace

int main(int argc, char **argv) {
  std::size_t frames = 200000, dims = 16, k = 128, pd_rows = 400, pd_cols = 40;
  int reps = 5;
  std::vector<int> workers = {1, 2, 4};
  CLI::App app("Serial vs OpenMP kernel timings");
  app.add_option("--frames", frames, "Frames per kernel call");
  app.add_option("--dims", dims, "Feature dimensionality");
  app.add_option("--k", k, "Centroids");
  app.add_option("--pd-rows", pd_rows, "Rows per side for pairwise correlation");
  app.add_option("--reps", reps, "Repetitions (median reported)")->check(CLI::PositiveNumber);
  app.add_option("--workers", workers, "Worker counts to try")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<float> uf(-3.0f, 3.0f);
  std::uniform_real_distribution<double> ud(-3.0, 3.0);
  std::vector<float> x(frames * dims);
  for (auto &v : x) v = uf(rng);
  std::vector<double> cents(k * dims);
  for (auto &v : cents) v = ud(rng);

  std::printf("frames=%zu dims=%zu k=%zu reps=%d\n", frames, dims, k, reps);
  std::printf("%-20s %-8s %7s %12s %10s\n", "kernel", "mode", "workers", "median_ms", "speedup");

  // AssignNearest
  std::vector<std::uint32_t> l0(frames), l1(frames);
  std::vector<double> d0(frames), d1(frames);
  const double assign_serial =
      MedianMs(reps, [&] { kernels::serial::AssignNearest(x, dims, cents, l0, d0); });
  Row("AssignNearest", "serial", 1, assign_serial, assign_serial, true);
  for (int w : workers) {
    kernels::SetWorkers(w);
    const double ms = MedianMs(reps, [&] { kernels::AssignNearest(x, dims, cents, l1, d1); });
    Row("AssignNearest", "omp", w, ms, assign_serial, l0 == l1 && d0 == d1);
  }

  // Accumulate
  kernels::ClusterStats s0, s1;
  const double acc_serial =
      MedianMs(reps, [&] { s0 = kernels::serial::Accumulate(x, dims, l0, k); });
  Row("Accumulate", "serial", 1, acc_serial, acc_serial, true);
  for (int w : workers) {
    kernels::SetWorkers(w);
    const double ms = MedianMs(reps, [&] { s1 = kernels::Accumulate(x, dims, l0, k); });
    Row("Accumulate", "omp", w, ms, acc_serial, s0.sums == s1.sums && s0.counts == s1.counts);
  }

  // UpdateMinDistance
  std::vector<double> m0(frames, 1e30), m1(frames, 1e30);
  const std::span<const double> first(cents.data(), dims);
  const double upd_serial =
      MedianMs(reps, [&] { kernels::serial::UpdateMinDistance(x, dims, first, m0); });
  Row("UpdateMinDistance", "serial", 1, upd_serial, upd_serial, true);
  for (int w : workers) {
    kernels::SetWorkers(w);
    const double ms = MedianMs(reps, [&] { kernels::UpdateMinDistance(x, dims, first, m1); });
    Row("UpdateMinDistance", "omp", w, ms, upd_serial, m0 == m1);
  }

  // Sum
  double sum0 = 0, sum1 = 0;
  const double sum_serial = MedianMs(reps, [&] { sum0 = kernels::serial::Sum(d0); });
  Row("Sum", "serial", 1, sum_serial, sum_serial, true);
  for (int w : workers) {
    kernels::SetWorkers(w);
    const double ms = MedianMs(reps, [&] { sum1 = kernels::ShardedSum(d0); });
    Row("ShardedSum", "omp", w, ms, sum_serial, std::abs(sum0 - sum1) <= 1e-9 * std::abs(sum0));
  }

  // PairwiseCorrelation
  std::vector<double> a(pd_rows * pd_cols), b(pd_rows * pd_cols);
  for (auto &v : a) v = ud(rng);
  for (auto &v : b) v = ud(rng);
  std::vector<std::uint8_t> mask(pd_rows * pd_cols, 1);
  std::vector<double> c0(pd_rows * pd_rows), c1(pd_rows * pd_rows);
  const double corr_serial = MedianMs(reps, [&] {
    kernels::serial::PairwiseCorrelation(a, mask, b, mask, pd_cols, c0);
  });
  Row("PairwiseCorrelation", "serial", 1, corr_serial, corr_serial, true);
  for (int w : workers) {
    kernels::SetWorkers(w);
    const double ms = MedianMs(
        reps, [&] { kernels::PairwiseCorrelation(a, mask, b, mask, pd_cols, c1); });
    Row("PairwiseCorrelation", "omp", w, ms, corr_serial, c0 == c1);
  }

  // End to end: k-means training on a slice of the frames.
  const std::size_t train_frames = std::min<std::size_t>(frames, 50000);
  const std::vector<unitaccent::FeatureMatrix> feats = {unitaccent::FeatureMatrix(
      "bench", train_frames, dims, std::vector<float>(x.begin(), x.begin() + train_frames * dims))};
  unitaccent::KMeansConfig cfg;
  cfg.k = static_cast<std::uint32_t>(std::min<std::size_t>(k, 64));
  cfg.max_iters = 20;
  double train_one = 0;
  std::vector<float> ref;
  for (int w : workers) {
    kernels::SetWorkers(w);
    std::vector<float> got;
    const double ms = MedianMs(std::max(1, reps / 2), [&] {
      const auto cb = unitaccent::TrainCodebook(feats, cfg);
      got.assign(cb.centroids().begin(), cb.centroids().end());
    });
    if (ref.empty()) {
      ref = got;
      train_one = ms;
    }
    Row("TrainCodebook", "omp", w, ms, train_one, got == ref);
  }
  return 0;
}
