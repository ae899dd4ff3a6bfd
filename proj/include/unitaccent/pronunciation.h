// unitaccent/pronunciation.h

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

// Posterior-based accent measures.
//
//  APP_{s,p}  averaged phoneme posterior of speaker s over the rows where s
//             intended phoneme p ("SIL" rows are ignored).
//  PD_{s,p}   mean over native speakers n of KL(APP_{s,p} || APP_{n,p}),
//             natural log, both sides floored at 1e-10 and renormalised.
//  NA(X, Y)   mean correlation corr(PD_i, PD_j) over i in X, j in Y, on the
//             phonemes defined for both; i == j pairs skipped within a group.

#ifndef UNITACCENT_PRONUNCIATION_H_
#define UNITACCENT_PRONUNCIATION_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "unitaccent/featio.h"

namespace unitaccent {

inline constexpr double kKlEpsilon = 1e-10;
inline constexpr double kDistributionTolerance = 1e-4;

struct AveragedPosteriors {
  std::string speaker_id;
  std::vector<std::string> phoneme_labels;  // P
  std::vector<double> rows;                 // P x P, row p = APP_{s,p}
  std::vector<std::uint64_t> support;       // rows averaged into row p

  std::size_t num_phonemes() const { return phoneme_labels.size(); }
  bool defined(std::size_t p) const { return support[p] > 0; }
  std::span<const double> Row(std::size_t p) const {
    return std::span<const double>(rows).subspan(p * num_phonemes(), num_phonemes());
  }
};

/// Throws ShapeError if the sets disagree on phoneme_labels (including
/// order) and DataError if `sets` is empty.
AveragedPosteriors AveragePosteriors(const std::string &speaker_id,
                                     std::span<const PosteriorSet> sets);

/// KL(p || q) in nats after flooring at kKlEpsilon and renormalising.
/// Throws ShapeError on length mismatch and DataError if either input has a
/// negative entry or does not sum to 1 within kDistributionTolerance.
double KlDivergence(std::span<const double> p, std::span<const double> q);

struct PdVector {
  std::string speaker_id;
  std::vector<std::string> phoneme_labels;
  std::vector<double> values;         // NaN where undefined
  std::vector<std::uint8_t> defined;  // 1 where values is meaningful
  std::vector<std::uint64_t> support; // speaker's APP support per phoneme

  std::size_t num_defined() const;
};

/// PD_s against a native reference group. A phoneme is undefined when the
/// speaker never intended it or no native did; natives lacking a phoneme are
/// left out of that phoneme's mean. Throws DataError if natives is empty or
/// no phoneme ends up defined, ShapeError on label mismatch.
PdVector PronunciationDeviation(const AveragedPosteriors &speaker,
                                std::span<const AveragedPosteriors> natives);

enum class Correlation { kPearson, kSpearman };

struct NaResult {
  double na = 0.0;
  std::size_t n_pairs = 0;
};

/// Cross-group naturalness: mean correlation over all |a| x |b| pairs.
/// Throws DataError if a group is empty, a pair shares fewer than two
/// defined phonemes, or a restricted PD vector has zero variance.
NaResult Naturalness(std::span<const PdVector> a, std::span<const PdVector> b,
                     Correlation corr = Correlation::kPearson);
/// Within-group naturalness (e.g. NA(rJE)); pairs (i, i) are excluded.
NaResult NaturalnessWithin(std::span<const PdVector> group,
                           Correlation corr = Correlation::kPearson);

/// Average ranks (ties share the mean rank), 1-based.
std::vector<double> Ranks(std::span<const double> v);

}  // namespace unitaccent

#endif  // UNITACCENT_PRONUNCIATION_H_
