// src/pronunciation.cc

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

#include "unitaccent/pronunciation.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "unitaccent/kernels.h"

namespace unitaccent {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void CheckDistribution(std::span<const double> v, const char *name) {
  double sum = 0.0;
  for (double x : v) {
    if (!(x >= 0.0) || !std::isfinite(x))
      throw DataError(std::string("KL divergence: ") + name +
                      " has a negative or non-finite entry");
    sum += x;
  }
  if (std::abs(sum - 1.0) > kDistributionTolerance)
    throw DataError(std::string("KL divergence: ") + name + " sums to " +
                    std::to_string(sum) + ", not 1");
}

std::vector<double> FloorAndNormalise(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  double sum = 0.0;
  for (double &x : out) {
    x = std::max(x, kKlEpsilon);
    sum += x;
  }
  for (double &x : out) x /= sum;
  return out;
}

void CheckSameLabels(const std::vector<std::string> &a, const std::vector<std::string> &b,
                     const std::string &who) {
  if (a != b) throw ShapeError("phoneme label order of " + who + " differs");
}

// Shared defined values of two PD vectors.
void SharedValues(const PdVector &x, const PdVector &y, std::vector<double> *xs,
                  std::vector<double> *ys) {
  xs->clear();
  ys->clear();
  for (std::size_t p = 0; p < x.values.size(); ++p) {
    if (x.defined[p] && y.defined[p]) {
      xs->push_back(x.values[p]);
      ys->push_back(y.values[p]);
    }
  }
}

[[noreturn]] void ThrowPairError(const PdVector &x, const PdVector &y) {
  std::vector<double> xs, ys;
  SharedValues(x, y, &xs, &ys);
  if (xs.size() < 2)
    throw DataError("NA: speakers " + x.speaker_id + " and " + y.speaker_id +
                    " share " + std::to_string(xs.size()) +
                    " defined phonemes, need at least 2");
  throw DataError("NA: zero-variance PD vector in pair " + x.speaker_id + ", " +
                  y.speaker_id);
}

double SpearmanPair(const PdVector &x, const PdVector &y) {
  std::vector<double> xs, ys;
  SharedValues(x, y, &xs, &ys);
  if (xs.size() < 2) return kNaN;
  const auto rx = Ranks(xs), ry = Ranks(ys);
  return kernels::Pearson(rx, ry);
}

// Correlation matrix |a| x |b| in row-major order.
std::vector<double> CorrelationMatrix(std::span<const PdVector> a,
                                      std::span<const PdVector> b, Correlation corr) {
  const std::size_t cols = a.front().values.size();
  for (const auto &v : a) CheckSameLabels(v.phoneme_labels, a.front().phoneme_labels, v.speaker_id);
  for (const auto &v : b) CheckSameLabels(v.phoneme_labels, a.front().phoneme_labels, v.speaker_id);
  std::vector<double> out(a.size() * b.size());
  if (corr == Correlation::kSpearman) {
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        out[i * b.size() + j] = SpearmanPair(a[i], b[j]);
    return out;
  }
  auto pack = [cols](std::span<const PdVector> g, std::vector<double> *vals,
                     std::vector<std::uint8_t> *mask) {
    vals->assign(g.size() * cols, 0.0);
    mask->assign(g.size() * cols, 0);
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t p = 0; p < cols; ++p)
        if (g[i].defined[p]) {
          (*vals)[i * cols + p] = g[i].values[p];
          (*mask)[i * cols + p] = 1;
        }
  };
  std::vector<double> av, bv;
  std::vector<std::uint8_t> am, bm;
  pack(a, &av, &am);
  pack(b, &bv, &bm);
  kernels::PairwiseCorrelation(av, am, bv, bm, cols, out);
  return out;
}

}  // namespace

AveragedPosteriors AveragePosteriors(const std::string &speaker_id,
                                     std::span<const PosteriorSet> sets) {
  if (sets.empty()) throw DataError("APP of speaker " + speaker_id + " from no utterances");
  AveragedPosteriors app;
  app.speaker_id = speaker_id;
  app.phoneme_labels = sets.front().phoneme_labels();
  const std::size_t p_count = app.num_phonemes();
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t p = 0; p < p_count; ++p) index.emplace(app.phoneme_labels[p], p);
  app.rows.assign(p_count * p_count, 0.0);
  app.support.assign(p_count, 0);
  for (const auto &ps : sets) {
    CheckSameLabels(ps.phoneme_labels(), app.phoneme_labels, "utterance " + ps.utt_id());
    for (std::size_t r = 0; r < ps.rows(); ++r) {
      const std::string &want = ps.intended()[r];
      if (want == kSilenceLabel) continue;
      const std::size_t p = index.at(want);
      auto row = ps.Row(r);
      double *acc = app.rows.data() + p * p_count;
      for (std::size_t k = 0; k < p_count; ++k) acc[k] += static_cast<double>(row[k]);
      ++app.support[p];
    }
  }
  for (std::size_t p = 0; p < p_count; ++p) {
    double *acc = app.rows.data() + p * p_count;
    if (app.support[p] == 0) {
      std::fill(acc, acc + p_count, kNaN);
      continue;
    }
    const double inv = 1.0 / static_cast<double>(app.support[p]);
    for (std::size_t k = 0; k < p_count; ++k) acc[k] *= inv;
  }
  return app;
}

double KlDivergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size())
    throw ShapeError("KL divergence of distributions of length " +
                     std::to_string(p.size()) + " and " + std::to_string(q.size()));
  CheckDistribution(p, "p");
  CheckDistribution(q, "q");
  const auto ps = FloorAndNormalise(p), qs = FloorAndNormalise(q);
  double kl = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i) kl += ps[i] * std::log(ps[i] / qs[i]);
  return kl;
}

std::size_t PdVector::num_defined() const {
  return static_cast<std::size_t>(std::count(defined.begin(), defined.end(), 1));
}

PdVector PronunciationDeviation(const AveragedPosteriors &speaker,
                                std::span<const AveragedPosteriors> natives) {
  if (natives.empty())
    throw DataError("pronunciation deviation of " + speaker.speaker_id +
                    " needs at least one native speaker");
  for (const auto &n : natives)
    CheckSameLabels(n.phoneme_labels, speaker.phoneme_labels, "native " + n.speaker_id);
  const std::size_t p_count = speaker.num_phonemes();
  PdVector pd;
  pd.speaker_id = speaker.speaker_id;
  pd.phoneme_labels = speaker.phoneme_labels;
  pd.values.assign(p_count, kNaN);
  pd.defined.assign(p_count, 0);
  pd.support = speaker.support;
  for (std::size_t p = 0; p < p_count; ++p) {
    if (!speaker.defined(p)) continue;
    double sum = 0.0;
    std::size_t used = 0;
    for (const auto &n : natives) {
      if (!n.defined(p)) continue;
      sum += KlDivergence(speaker.Row(p), n.Row(p));
      ++used;
    }
    if (used == 0) continue;
    pd.values[p] = sum / static_cast<double>(used);
    pd.defined[p] = 1;
  }
  if (pd.num_defined() == 0)
    throw DataError("speaker " + speaker.speaker_id +
                    " shares no defined phoneme with the native group");
  return pd;
}

NaResult Naturalness(std::span<const PdVector> a, std::span<const PdVector> b,
                     Correlation corr) {
  if (a.empty() || b.empty()) throw DataError("NA needs two non-empty groups");
  const std::vector<double> m = CorrelationMatrix(a, b, corr);
  NaResult res;
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double r = m[i * b.size() + j];
      if (std::isnan(r)) ThrowPairError(a[i], b[j]);
      sum += r;
      ++res.n_pairs;
    }
  }
  res.na = sum / static_cast<double>(res.n_pairs);
  return res;
}

NaResult NaturalnessWithin(std::span<const PdVector> group, Correlation corr) {
  if (group.size() < 2) throw DataError("within-group NA needs at least 2 speakers");
  const std::vector<double> m = CorrelationMatrix(group, group, corr);
  const std::size_t n = group.size();
  NaResult res;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double r = m[i * n + j];
      if (std::isnan(r)) ThrowPairError(group[i], group[j]);
      sum += r;
      ++res.n_pairs;
    }
  }
  res.na = sum / static_cast<double>(res.n_pairs);
  return res;
}

std::vector<double> Ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return v[x] < v[y]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
    i = j + 1;
  }
  return ranks;
}

}  // namespace unitaccent
