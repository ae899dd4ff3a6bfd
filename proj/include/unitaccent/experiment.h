// unitaccent/experiment.h

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

// Accentuation experiment: language-A speech pushed through a codebook
// trained on language B, then transcribed with A's phone inventory.
//
// For every (K, seed) cell:
//   1. train a K-unit codebook on B utterances sampled from the seed;
//   2. quantize and centroid-decode A utterances sampled from the seed;
//   3. oracle-decode the reconstructions with A's phones;
//   4. score PER and substitution rates against the ground-truth phones.
// Training and evaluation data depend on the seed only, never on K.

#ifndef UNITACCENT_EXPERIMENT_H_
#define UNITACCENT_EXPERIMENT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "unitaccent/alignment.h"
#include "unitaccent/quantizer.h"
#include "unitaccent/substitution.h"
#include "unitaccent/synthlang.h"

namespace unitaccent {

struct ExperimentConfig {
  std::vector<std::uint32_t> ks = {8, 32, 128};
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4};
  std::size_t n_train_utts = 200;
  std::size_t n_eval_utts = 50;
  std::size_t phones_per_utt = 14;
  std::size_t min_run = 2;
  std::uint32_t max_iters = 100;
  double tol = 1e-4;

  /// Throws ValidationError: Ks must be non-empty and strictly increasing,
  /// at least 2 seeds, positive utterance counts.
  void Validate() const;
};

struct ExperimentCell {
  std::uint32_t k = 0;
  std::uint64_t seed = 0;
  CorpusErrorRate per;
  SubstitutionTable sr;
  double mse = 0.0;       // mean squared reconstruction error per frame
  double inertia = 0.0;   // codebook inertia of the eval frames
  std::uint32_t iterations = 0;
  std::uint64_t eval_frames = 0;
};

struct ExperimentAggregate {
  std::uint32_t k = 0;
  double per_mean = 0.0;
  double per_stdev = 0.0;  // sample standard deviation over seeds
  double mse_mean = 0.0;
  double mse_stdev = 0.0;
};

struct ExperimentReport {
  std::string lang_a;
  std::string lang_b;
  ExperimentConfig config;
  std::vector<ExperimentCell> cells;  // K-major, seeds in config order
  std::vector<ExperimentAggregate> aggregates;

  const ExperimentCell &Cell(std::uint32_t k, std::uint64_t seed) const;
};

/// Cells run concurrently on the current worker pool; the report does not
/// depend on the number of workers.
ExperimentReport RunAccentExperiment(const SyntheticLanguage &lang_a,
                                     const SyntheticLanguage &lang_b,
                                     const ExperimentConfig &cfg);

/// Deterministic JSON rendering (two-space indent, trailing newline).
std::string ReportToJson(const ExperimentReport &report);

}  // namespace unitaccent

#endif  // UNITACCENT_EXPERIMENT_H_
