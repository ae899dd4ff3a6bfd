// src/experiment.cc

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

#include "unitaccent/experiment.h"

#include <cmath>
#include <exception>

#include "json.hpp"
#include "random.h"
#include "unitaccent/reconstructor.h"

namespace unitaccent {

namespace {

constexpr std::uint64_t kTrainTag = 0x100000000ull;
constexpr std::uint64_t kEvalTag = 0x200000000ull;

struct SeedData {
  std::vector<FeatureMatrix> train;
  std::vector<FeatureMatrix> eval;
  std::vector<TokenSequence> truth;
};

SeedData SampleSeed(const SyntheticLanguage &a, const SyntheticLanguage &b,
                    const ExperimentConfig &cfg, std::uint64_t seed) {
  SeedData d;
  for (std::size_t i = 0; i < cfg.n_train_utts; ++i)
    d.train.push_back(SampleUtterance(b, cfg.phones_per_utt,
                                      internal::MixSeed(seed, kTrainTag + i),
                                      "train-" + std::to_string(i))
                          .features);
  for (std::size_t i = 0; i < cfg.n_eval_utts; ++i) {
    SampledUtterance u = SampleUtterance(a, cfg.phones_per_utt,
                                         internal::MixSeed(seed, kEvalTag + i),
                                         "eval-" + std::to_string(i));
    d.eval.push_back(std::move(u.features));
    d.truth.push_back(std::move(u.phones));
  }
  return d;
}

ExperimentCell RunCell(const SyntheticLanguage &lang_a, const SyntheticLanguage &lang_b,
                       const ExperimentConfig &cfg, const SeedData &data, std::uint32_t k,
                       std::uint64_t seed) {
  KMeansConfig km;
  km.k = k;
  km.seed = seed;
  km.max_iters = cfg.max_iters;
  km.tol = cfg.tol;
  const Codebook cb = TrainCodebook(data.train, km, lang_b.name);

  ExperimentCell cell;
  cell.k = k;
  cell.seed = seed;
  cell.iterations = cb.meta().iterations_run;
  std::vector<TokenSequence> hyps;
  double sq_err = 0.0;
  for (const auto &m : data.eval) {
    const FeatureMatrix recon = DecodeCentroid(Quantize(m, cb), cb);
    sq_err += MeanSquaredError(m, recon) * static_cast<double>(m.rows());
    cell.eval_frames += m.rows();
    hyps.push_back(OraclePhoneDecode(recon, lang_a, cfg.min_run));
  }
  cell.mse = sq_err / static_cast<double>(cell.eval_frames);
  cell.inertia = Inertia(data.eval, cb);
  cell.per = ScoreCorpus(data.truth, hyps);
  const SpeakerTranscripts speaker{"accented", hyps};
  cell.sr = SubstitutionRates(data.truth, std::span<const SpeakerTranscripts>(&speaker, 1),
                              "K=" + std::to_string(k));
  return cell;
}

void MeanStdev(const std::vector<double> &v, double *mean, double *stdev) {
  double s = 0.0;
  for (double x : v) s += x;
  *mean = s / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - *mean) * (x - *mean);
  *stdev = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
}

}  // namespace

void ExperimentConfig::Validate() const {
  if (ks.empty()) throw ValidationError("experiment: at least one K required");
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] == 0) throw ValidationError("experiment: K must be >= 1");
    if (i > 0 && ks[i] <= ks[i - 1])
      throw ValidationError("experiment: Ks must be strictly increasing");
  }
  if (seeds.size() < 2) throw ValidationError("experiment: at least 2 seeds required");
  if (n_train_utts == 0 || n_eval_utts == 0 || phones_per_utt == 0)
    throw ValidationError("experiment: utterance counts must be positive");
  if (max_iters == 0) throw ValidationError("experiment: max_iters must be >= 1");
}

const ExperimentCell &ExperimentReport::Cell(std::uint32_t k, std::uint64_t seed) const {
  for (const auto &c : cells)
    if (c.k == k && c.seed == seed) return c;
  throw DataError("experiment report has no cell K=" + std::to_string(k) +
                  " seed=" + std::to_string(seed));
}

ExperimentReport RunAccentExperiment(const SyntheticLanguage &lang_a,
                                     const SyntheticLanguage &lang_b,
                                     const ExperimentConfig &cfg) {
  cfg.Validate();
  lang_a.Validate();
  lang_b.Validate();
  if (lang_a.dims != lang_b.dims)
    throw ShapeError("experiment: languages " + lang_a.name + " and " + lang_b.name +
                     " have different dims");

  const std::size_t n_seeds = cfg.seeds.size();
  const std::size_t n_cells = cfg.ks.size() * n_seeds;
  std::vector<SeedData> data(n_seeds);
  std::vector<ExperimentCell> cells(n_cells);
  std::vector<std::exception_ptr> errors(n_seeds + n_cells);

#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t s = 0; s < n_seeds; ++s) {
    try {
      data[s] = SampleSeed(lang_a, lang_b, cfg, cfg.seeds[s]);
    } catch (...) {
      errors[s] = std::current_exception();
    }
  }
  for (const auto &e : errors)
    if (e) std::rethrow_exception(e);

  // Largest K first so the slowest cells start early.
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < n_cells; ++i) {
    const std::size_t c = n_cells - 1 - i;
    const std::size_t ki = c / n_seeds, s = c % n_seeds;
    try {
      cells[c] = RunCell(lang_a, lang_b, cfg, data[s], cfg.ks[ki], cfg.seeds[s]);
    } catch (...) {
      errors[n_seeds + c] = std::current_exception();
    }
  }
  for (const auto &e : errors)
    if (e) std::rethrow_exception(e);

  ExperimentReport report;
  report.lang_a = lang_a.name;
  report.lang_b = lang_b.name;
  report.config = cfg;
  report.cells = std::move(cells);
  for (std::size_t ki = 0; ki < cfg.ks.size(); ++ki) {
    std::vector<double> per, mse;
    for (std::size_t s = 0; s < n_seeds; ++s) {
      per.push_back(report.cells[ki * n_seeds + s].per.rate);
      mse.push_back(report.cells[ki * n_seeds + s].mse);
    }
    ExperimentAggregate agg;
    agg.k = cfg.ks[ki];
    MeanStdev(per, &agg.per_mean, &agg.per_stdev);
    MeanStdev(mse, &agg.mse_mean, &agg.mse_stdev);
    report.aggregates.push_back(agg);
  }
  return report;
}

std::string ReportToJson(const ExperimentReport &report) {
  using nlohmann::ordered_json;
  const ExperimentConfig &cfg = report.config;
  ordered_json j;
  j["lang_a"] = report.lang_a;
  j["lang_b"] = report.lang_b;
  j["config"] = {{"ks", cfg.ks},
                 {"seeds", cfg.seeds},
                 {"n_train_utts", cfg.n_train_utts},
                 {"n_eval_utts", cfg.n_eval_utts},
                 {"phones_per_utt", cfg.phones_per_utt},
                 {"min_run", cfg.min_run},
                 {"max_iters", cfg.max_iters},
                 {"tol", cfg.tol}};
  j["cells"] = ordered_json::array();
  for (const auto &c : report.cells) {
    ordered_json cell;
    cell["k"] = c.k;
    cell["seed"] = c.seed;
    cell["per"] = c.per.rate;
    cell["ref_tokens"] = c.per.ref_tokens;
    cell["substitutions"] = c.per.counts.subs;
    cell["deletions"] = c.per.counts.dels;
    cell["insertions"] = c.per.counts.ins;
    cell["mse"] = c.mse;
    cell["inertia"] = c.inertia;
    cell["eval_frames"] = c.eval_frames;
    cell["kmeans_iterations"] = c.iterations;
    ordered_json counts = ordered_json::object();
    for (const auto &[p, n] : c.sr.model_counts) counts[p] = n;
    cell["model_counts"] = counts;
    ordered_json sr = ordered_json::array();
    for (const auto &[pair, rate] : c.sr.rates)
      sr.push_back({{"p_o", pair.first}, {"p_s", pair.second}, {"sr", rate}});
    cell["sr"] = sr;
    j["cells"].push_back(cell);
  }
  j["aggregates"] = ordered_json::array();
  for (const auto &a : report.aggregates)
    j["aggregates"].push_back({{"k", a.k},
                               {"per_mean", a.per_mean},
                               {"per_stdev", a.per_stdev},
                               {"mse_mean", a.mse_mean},
                               {"mse_stdev", a.mse_stdev}});
  return j.dump(2) + "\n";
}

}  // namespace unitaccent
