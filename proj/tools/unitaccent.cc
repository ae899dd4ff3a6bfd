// tools/unitaccent.cc

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

// unitaccent: command-line front end.
//
// Exit status: 0 success, 1 usage error, 2 data error.

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "run-record.h"
#include "unitaccent/alignment.h"
#include "unitaccent/embedding.h"
#include "unitaccent/error.h"
#include "unitaccent/experiment.h"
#include "unitaccent/featio.h"
#include "unitaccent/kernels.h"
#include "unitaccent/metrics-io.h"
#include "unitaccent/pronunciation.h"
#include "unitaccent/quantizer.h"
#include "unitaccent/reconstructor.h"
#include "unitaccent/substitution.h"
#include "unitaccent/synthlang.h"
#include "unitaccent/unitops.h"
#include "unitaccent/version.h"

namespace fs = std::filesystem;

namespace unitaccent {
namespace {

std::filesystem::path RecordPathFor(const fs::path &output) {
  return fs::path(output.string() + ".run.json");
}

Manifest LoadManifestRecorded(const fs::path &path, RunRecord &rec) {
  Manifest m = LoadManifest(path);
  rec.AddInput(path);
  for (const auto &e : m.entries()) {
    rec.AddInput(e.path);
    if (fs::exists(PosteriorSidecarPath(e.path))) rec.AddInput(PosteriorSidecarPath(e.path));
  }
  return m;
}

// Shortest round-trip decimal, always with a fractional part ("0.0").
std::string FormatRate(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  std::string s(buf, res.ptr);
  if (std::isfinite(x) && s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

// Utterance id -> file stem usable in any directory.
std::string FileStem(const std::string &utt_id) {
  std::string s;
  for (unsigned char c : utt_id)
    s += (std::isalnum(c) || c == '-' || c == '_' || c == '.') ? static_cast<char>(c) : '_';
  return s;
}

// -------------------------------------------------------------- train-kmeans

struct TrainArgs {
  std::string manifest, out, language, group;
  KMeansConfig cfg;
  std::size_t max_frames = 0;
};

void RunTrain(const TrainArgs &a, RunRecord &rec) {
  Manifest m = LoadManifestRecorded(a.manifest, rec);
  if (!a.group.empty()) m = FilterGroup(m, a.group);
  if (m.empty()) throw DataError("no training utterances in " + a.manifest);
  FramePool pool(a.max_frames ? std::optional<std::size_t>(a.max_frames) : std::nullopt,
                 a.cfg.seed);
  for (const auto &e : m.entries()) pool.Add(ReadFeatures(e.path));
  const Codebook cb = TrainCodebook(pool, a.cfg, a.language);
  WriteCodebook(cb, a.out);
  rec.AddSeed("kmeans", a.cfg.seed);
  rec.AddOutput(a.out);
  rec.Save(RecordPathFor(a.out));
  std::cout << "trained K=" << cb.k() << " on " << cb.meta().training_frame_count
            << " frames, " << cb.meta().iterations_run << " iterations, inertia "
            << cb.meta().final_inertia << "\n";
}

// ------------------------------------------------------------------ quantize

struct QuantizeArgs {
  std::string manifest, codebook, out;
  bool dedup = false;
};

void RunQuantize(const QuantizeArgs &a, RunRecord &rec) {
  const Manifest m = LoadManifestRecorded(a.manifest, rec);
  const Codebook cb = ReadCodebook(a.codebook);
  rec.AddInput(a.codebook);
  std::vector<UnitRecord> out;
  for (const auto &e : m.entries()) {
    UnitSequence s = Quantize(ReadFeatures(e.path), cb);
    s.utt_id = e.utt_id;
    if (a.dedup)
      out.emplace_back(Dedup(s));
    else
      out.emplace_back(std::move(s));
  }
  WriteUnitFile(out, a.out);
  rec.AddOutput(a.out);
  rec.Save(RecordPathFor(a.out));
}

// --------------------------------------------------------------- reconstruct

struct ReconstructArgs {
  std::string units, codebook, out_dir, manifest, decoder_job;
};

void RunReconstruct(const ReconstructArgs &a, RunRecord &rec) {
  const Codebook cb = ReadCodebook(a.codebook);
  rec.AddInput(a.codebook);
  const std::vector<UnitRecord> records = ReadUnitFile(a.units);
  rec.AddInput(a.units);
  std::map<std::string, ManifestEntry> meta;
  if (!a.manifest.empty()) {
    const Manifest source = LoadManifestRecorded(a.manifest, rec);
    for (const auto &e : source.entries()) meta[e.utt_id] = e;
  }

  fs::create_directories(a.out_dir);
  std::vector<ManifestEntry> entries;
  std::vector<UnitSequence> seqs;
  std::set<std::string> stems;
  for (const auto &r : records) {
    UnitSequence s = ToFrameWise(r);
    const std::string stem = FileStem(s.utt_id);
    if (!stems.insert(stem).second)
      throw DataError("utterance ids collide as file names: " + s.utt_id);
    const fs::path file = fs::path(a.out_dir) / (stem + ".fuf");
    WriteFeatures(DecodeCentroid(s, cb), file);
    rec.AddOutput(file);
    ManifestEntry e{s.utt_id, s.utt_id, cb.meta().language, "", stem + ".fuf"};
    if (auto it = meta.find(s.utt_id); it != meta.end()) {
      e.speaker_id = it->second.speaker_id;
      e.language = it->second.language;
      e.group = it->second.group;
    }
    entries.push_back(std::move(e));
    seqs.push_back(std::move(s));
  }
  const fs::path manifest = fs::path(a.out_dir) / "manifest.json";
  SaveManifest(Manifest(std::move(entries)), manifest);
  rec.AddOutput(manifest);
  if (!a.decoder_job.empty()) {
    WriteDecoderJobs(seqs, a.decoder_job);
    rec.AddOutput(a.decoder_job);
  }
  rec.Save(fs::path(a.out_dir) / "run.json");
}

// ------------------------------------------------------------------- eval-er

struct ErArgs {
  std::string ref, hyp, level, out;
};

void RunEvalEr(const ErArgs &a, RunRecord &rec) {
  const TokenLevel level = ParseTokenLevel(a.level);
  const auto refs = ReadTokenFile(a.ref);
  const auto hyps = ReadTokenFile(a.hyp);
  rec.AddInput(a.ref);
  rec.AddInput(a.hyp);
  for (const auto *set : {&refs, &hyps})
    for (const auto &s : *set)
      if (s.level != level)
        throw DataError("utterance " + s.utt_id + " is at level " + TokenLevelName(s.level) +
                        ", expected " + a.level);
  const CorpusErrorRate r = ScoreCorpus(refs, hyps);
  std::cout << FormatRate(r.rate) << "\n";
  if (a.out.empty()) return;
  nlohmann::ordered_json j;
  j["level"] = a.level;
  j["rate"] = r.rate;
  j["ref_tokens"] = r.ref_tokens;
  j["utterances"] = r.utterances;
  j["substitutions"] = r.counts.subs;
  j["deletions"] = r.counts.dels;
  j["insertions"] = r.counts.ins;
  std::ofstream(a.out) << j.dump(2) << "\n";
  rec.AddOutput(a.out);
  rec.Save(RecordPathFor(a.out));
}

// ------------------------------------------------------------------- eval-pd

struct PdArgs {
  std::string posteriors, native_group, out;
  std::vector<std::string> groups;
};

void RunEvalPd(const PdArgs &a, RunRecord &rec) {
  const Manifest m = LoadManifestRecorded(a.posteriors, rec);
  std::vector<std::string> order;
  std::map<std::string, std::vector<PosteriorSet>> by_speaker;
  std::map<std::string, std::string> group_of;
  for (const auto &e : m.entries()) {
    auto [it, fresh] = by_speaker.try_emplace(e.speaker_id);
    if (fresh) {
      order.push_back(e.speaker_id);
      group_of[e.speaker_id] = e.group;
    } else if (group_of[e.speaker_id] != e.group) {
      throw DataError("speaker " + e.speaker_id + " appears in two groups");
    }
    it->second.push_back(ReadPosteriors(e.path));
  }
  std::vector<AveragedPosteriors> natives;
  for (const auto &s : order)
    if (group_of[s] == a.native_group) natives.push_back(AveragePosteriors(s, by_speaker[s]));
  if (natives.empty()) throw DataError("no speakers in native group " + a.native_group);

  const std::set<std::string> wanted(a.groups.begin(), a.groups.end());
  std::vector<PdVector> pds;
  for (const auto &s : order) {
    const std::string &g = group_of[s];
    if (wanted.empty() ? g == a.native_group : !wanted.count(g)) continue;
    pds.push_back(PronunciationDeviation(AveragePosteriors(s, by_speaker[s]), natives));
  }
  if (pds.empty()) throw DataError("no speakers to score");
  WritePdCsv(a.out, pds);
  rec.AddOutput(a.out);
  rec.Save(RecordPathFor(a.out));
}

// Speaker -> group from a manifest (first entry wins).
std::map<std::string, std::string> SpeakerGroups(const Manifest &m) {
  std::map<std::string, std::string> out;
  for (const auto &e : m.entries()) out.emplace(e.speaker_id, e.group);
  return out;
}

std::vector<PdVector> PdsOfGroup(const std::vector<PdVector> &all,
                                 const std::map<std::string, std::string> &groups,
                                 const std::string &group) {
  std::vector<PdVector> out;
  for (const auto &pd : all) {
    auto it = groups.find(pd.speaker_id);
    if (it == groups.end())
      throw DataError("speaker " + pd.speaker_id + " is not in the manifest");
    if (it->second == group) out.push_back(pd);
  }
  if (out.empty()) throw DataError("no PD vectors for group " + group);
  return out;
}

// ------------------------------------------------------------------- eval-na

struct NaArgs {
  std::vector<std::string> pd;
  std::string manifest, group_a, group_b, out;
  bool spearman = false;
};

void RunEvalNa(const NaArgs &a, RunRecord &rec) {
  std::vector<PdVector> all;
  for (const auto &p : a.pd) {
    auto v = ReadPdCsv(p);
    rec.AddInput(p);
    all.insert(all.end(), v.begin(), v.end());
  }
  const auto groups = SpeakerGroups(LoadManifestRecorded(a.manifest, rec));
  const Correlation corr = a.spearman ? Correlation::kSpearman : Correlation::kPearson;
  const std::string group_b = a.group_b.empty() ? a.group_a : a.group_b;
  const auto xa = PdsOfGroup(all, groups, a.group_a);
  NaRow row{a.group_a, group_b, {}};
  row.result = group_b == a.group_a ? NaturalnessWithin(xa, corr)
                                    : Naturalness(xa, PdsOfGroup(all, groups, group_b), corr);
  WriteNaCsv(a.out, std::span<const NaRow>(&row, 1));
  std::cout << FormatRate(row.result.na) << "\n";
  rec.AddOutput(a.out);
  rec.Save(RecordPathFor(a.out));
}

// ------------------------------------------------------------------- eval-sr

struct SrArgs {
  std::string model, hyp, group, out;
  bool pooled = false;
};

void RunEvalSr(const SrArgs &a, RunRecord &rec) {
  const auto model = ReadTokenFile(a.model);
  const auto hyps = ReadTokenFile(a.hyp);
  rec.AddInput(a.model);
  rec.AddInput(a.hyp);
  const auto speakers = GroupBySpeaker(hyps);
  const SubstitutionTable t =
      SubstitutionRates(model, speakers, a.group,
                        a.pooled ? SrAggregation::kPooled : SrAggregation::kPerSpeakerMean);
  WriteSrCsv(a.out, std::span<const SubstitutionTable>(&t, 1));
  rec.AddOutput(a.out);
  rec.Save(RecordPathFor(a.out));
}

SubstitutionTable PickTable(const fs::path &path, const std::string &group, RunRecord &rec) {
  auto tables = ReadSrCsv(path);
  rec.AddInput(path);
  if (group.empty()) {
    if (tables.size() != 1)
      throw DataError(path.string() + " holds " + std::to_string(tables.size()) +
                      " groups; choose one");
    return tables.front();
  }
  for (auto &t : tables)
    if (t.group_label == group) return t;
  throw DataError("group " + group + " not found in " + path.string());
}

// -------------------------------------------------------------------- bin-sr

struct BinArgs {
  std::string real, synth, real_group, synth_group, out;
  std::vector<double> edges = kDefaultSrEdges;
};

void RunBinSr(const BinArgs &a, RunRecord &rec) {
  const SubstitutionTable real = PickTable(a.real, a.real_group, rec);
  const SubstitutionTable synth = PickTable(a.synth, a.synth_group, rec);
  WriteSrBinsCsv(a.out, BinSubstitutions(real, synth, a.edges));
  rec.AddOutput(a.out);
  rec.Save(RecordPathFor(a.out));
}

// -------------------------------------------------------------- phone-report

struct ReportArgs {
  std::vector<std::string> sr, candidates;
  std::string target, out;
};

void RunPhoneReport(const ReportArgs &a, RunRecord &rec) {
  std::vector<SubstitutionTable> tables;
  for (const auto &p : a.sr) {
    auto t = ReadSrCsv(p);
    rec.AddInput(p);
    tables.insert(tables.end(), t.begin(), t.end());
  }
  const auto rows = PhoneSubstitutionReport(tables, a.target, a.candidates);
  WritePhoneReportCsv(a.out, a.target, rows);
  rec.AddOutput(a.out);
  rec.Save(RecordPathFor(a.out));
}

// --------------------------------------------------------------------- embed

struct EmbedArgs {
  std::vector<std::string> pd, groups;
  std::string manifest, out;
};

void RunEmbed(const EmbedArgs &a, RunRecord &rec) {
  std::vector<PdVector> all;
  for (const auto &p : a.pd) {
    auto v = ReadPdCsv(p);
    rec.AddInput(p);
    all.insert(all.end(), v.begin(), v.end());
  }
  const auto group_of = SpeakerGroups(LoadManifestRecorded(a.manifest, rec));
  const std::set<std::string> wanted(a.groups.begin(), a.groups.end());
  std::vector<PdVector> used;
  std::vector<std::string> ids, groups;
  for (const auto &pd : all) {
    auto it = group_of.find(pd.speaker_id);
    if (it == group_of.end())
      throw DataError("speaker " + pd.speaker_id + " is not in the manifest");
    if (!wanted.empty() && !wanted.count(it->second)) continue;
    used.push_back(pd);
    ids.push_back(pd.speaker_id);
    groups.push_back(it->second);
  }
  const Embedding2D emb = PcaEmbed(used);
  WriteEmbeddingCsv(a.out, emb, ids, groups);
  rec.AddOutput(a.out);
  rec.Save(RecordPathFor(a.out));
}

// ------------------------------------------------------------------ simulate

struct SimulateArgs {
  std::string spec, out_dir;
  std::size_t utts = 10;
  std::size_t phones_per_utt = 14;
  std::uint64_t seed = 0;
};

void RunSimulate(const SimulateArgs &a, RunRecord &rec) {
  const SyntheticLanguage lang = LoadLanguage(a.spec);
  rec.AddInput(a.spec);
  rec.AddSeed("simulate", a.seed);
  if (a.utts == 0) throw DataError("--utts must be >= 1");
  fs::create_directories(a.out_dir);
  std::vector<ManifestEntry> entries;
  std::vector<TokenSequence> tokens;
  for (std::size_t i = 0; i < a.utts; ++i) {
    const std::string id = lang.name + "-" + std::to_string(i);
    SampledUtterance u = SampleUtterance(lang, a.phones_per_utt, a.seed + i, id);
    const std::string stem = FileStem(id);
    WriteFeatures(u.features, fs::path(a.out_dir) / (stem + ".fuf"));
    rec.AddOutput(fs::path(a.out_dir) / (stem + ".fuf"));
    entries.push_back({id, lang.name, lang.name, lang.name, stem + ".fuf"});
    tokens.push_back(std::move(u.phones));
  }
  const fs::path manifest = fs::path(a.out_dir) / "manifest.json";
  const fs::path token_file = fs::path(a.out_dir) / "tokens.jsonl";
  SaveManifest(Manifest(std::move(entries)), manifest);
  WriteTokenFile(tokens, token_file);
  rec.AddOutput(manifest);
  rec.AddOutput(token_file);
  rec.Save(fs::path(a.out_dir) / "run.json");
}

// ---------------------------------------------------------------- experiment

struct ExperimentArgs {
  std::string lang_a, lang_b, out;
  std::vector<std::uint32_t> ks = {8, 32, 128};
  std::size_t seeds = 5;
  std::uint64_t seed_base = 0;
  ExperimentConfig cfg;
};

void RunExperimentCmd(ExperimentArgs a, RunRecord &rec) {
  SyntheticLanguage la = DefaultLanguageA(), lb = DefaultLanguageB();
  if (!a.lang_a.empty()) {
    la = LoadLanguage(a.lang_a);
    rec.AddInput(a.lang_a);
  }
  if (!a.lang_b.empty()) {
    lb = LoadLanguage(a.lang_b);
    rec.AddInput(a.lang_b);
  }
  a.cfg.ks = a.ks;
  a.cfg.seeds.clear();
  for (std::size_t i = 0; i < a.seeds; ++i) {
    a.cfg.seeds.push_back(a.seed_base + i);
    rec.AddSeed("experiment[" + std::to_string(i) + "]", a.seed_base + i);
  }
  const ExperimentReport report = RunAccentExperiment(la, lb, a.cfg);
  std::ofstream(a.out, std::ios::binary) << ReportToJson(report);
  if (!fs::exists(a.out)) throw LoadError(LoadErrorKind::kIo, a.out, "cannot write report");
  rec.AddOutput(a.out);
  rec.Save(RecordPathFor(a.out));
  for (const auto &agg : report.aggregates)
    std::cout << "K=" << agg.k << " PER " << agg.per_mean << " +- " << agg.per_stdev
              << "  MSE " << agg.mse_mean << "\n";
}

int DefaultWorkers() {
  const char *env = std::getenv("UNITACCENT_WORKERS");
  if (!env || !*env) return 0;
  char *end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 0) {
    std::cerr << "warning: ignoring UNITACCENT_WORKERS=" << env << "\n";
    return 0;
  }
  return static_cast<int>(v);
}

int Main(int argc, char **argv) {
  CLI::App app{"unitaccent: discrete speech-unit accent analysis toolkit", "unitaccent"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  int workers = DefaultWorkers();
  app.add_option("--workers", workers, "Worker threads (default $UNITACCENT_WORKERS)")
      ->check(CLI::NonNegativeNumber);

  TrainArgs train;
  auto *c_train = app.add_subcommand("train-kmeans", "Learn a K-unit codebook");
  c_train->add_option("--features,--manifest", train.manifest, "Feature manifest")->required();
  c_train->add_option("--k", train.cfg.k, "Number of units")->required();
  c_train->add_option("--seed", train.cfg.seed, "Random seed")->required();
  c_train->add_option("--max-iters", train.cfg.max_iters, "Lloyd iterations or passes");
  c_train->add_option("--batch,--batch-size", train.cfg.batch_size, "Minibatch size (0 = full batch)");
  c_train->add_option("--tol", train.cfg.tol, "Relative inertia tolerance");
  c_train->add_option("--max-frames", train.max_frames, "Reservoir-sample this many frames");
  c_train->add_option("--language", train.language, "Language tag stored in the codebook");
  c_train->add_option("--group", train.group, "Use only manifest entries of this group");
  c_train->add_option("--out", train.out, "Codebook file (FUC1)")->required();

  QuantizeArgs quant;
  auto *c_quant = app.add_subcommand("quantize", "Map features to unit sequences");
  c_quant->add_option("--features,--manifest", quant.manifest, "Feature manifest")->required();
  c_quant->add_option("--codebook", quant.codebook, "Codebook file")->required();
  c_quant->add_option("--out", quant.out, "Unit JSONL output")->required();
  c_quant->add_flag("--dedup", quant.dedup, "Write run-length form");

  ReconstructArgs recon;
  auto *c_recon = app.add_subcommand("reconstruct", "Decode units to centroid features");
  c_recon->add_option("--units", recon.units, "Unit JSONL")->required();
  c_recon->add_option("--codebook", recon.codebook, "Codebook file")->required();
  c_recon->add_option("--out,--out-dir", recon.out_dir, "Output directory")->required();
  c_recon->add_option("--manifest", recon.manifest, "Copy speaker/group metadata from here");
  c_recon->add_option("--decoder-job", recon.decoder_job, "Also write external decoder jobs");

  ErArgs er;
  auto *c_er = app.add_subcommand("eval-er", "Word / phone error rate");
  c_er->add_option("--ref", er.ref, "Reference tokens")->required();
  c_er->add_option("--hyp", er.hyp, "Hypothesis tokens")->required();
  c_er->add_option("--level", er.level, "word, phone or unit")
      ->required()
      ->check(CLI::IsMember({"word", "phone", "unit"}));
  c_er->add_option("--out", er.out, "Also write a JSON summary");

  PdArgs pd;
  auto *c_pd = app.add_subcommand("eval-pd", "Pronunciation deviation per speaker");
  c_pd->add_option("--posteriors", pd.posteriors, "Posterior manifest")->required();
  c_pd->add_option("--native-group", pd.native_group, "Reference group")->required();
  c_pd->add_option("--groups", pd.groups, "Groups to score (default: all non-native)")
      ->delimiter(',');
  c_pd->add_option("--out", pd.out, "PD CSV")->required();

  NaArgs na;
  auto *c_na = app.add_subcommand("eval-na", "Naturalness of accent between groups");
  c_na->add_option("--pd", na.pd, "PD CSV files")->required()->delimiter(',');
  c_na->add_option("--manifest", na.manifest, "Manifest mapping speakers to groups")
      ->required();
  c_na->add_option("--group-a", na.group_a, "First group")->required();
  c_na->add_option("--group-b", na.group_b, "Second group (default: within group A)");
  c_na->add_flag("--spearman", na.spearman, "Rank correlation instead of Pearson");
  c_na->add_option("--out", na.out, "NA CSV")->required();

  SrArgs sr;
  auto *c_sr = app.add_subcommand("eval-sr", "Substitution rates against model speech");
  c_sr->add_option("--model", sr.model, "Model phone transcripts")->required();
  c_sr->add_option("--hyp", sr.hyp, "Group phone transcripts")->required();
  c_sr->add_option("--group", sr.group, "Group label")->required();
  c_sr->add_flag("--pooled", sr.pooled, "Pool counts instead of averaging speakers");
  c_sr->add_option("--out", sr.out, "SR CSV")->required();

  BinArgs bin;
  auto *c_bin = app.add_subcommand("bin-sr", "Bin pairs by real SR, average synthetic SR");
  c_bin->add_option("--real", bin.real, "Real SR CSV")->required();
  c_bin->add_option("--synth", bin.synth, "Synthetic SR CSV")->required();
  c_bin->add_option("--real-group", bin.real_group, "Table to use from --real");
  c_bin->add_option("--synth-group", bin.synth_group, "Table to use from --synth");
  c_bin->add_option("--edges", bin.edges, "Decreasing bin edges")->delimiter(',');
  c_bin->add_option("--out", bin.out, "Binned CSV")->required();

  ReportArgs rep;
  auto *c_rep = app.add_subcommand("phone-report", "SR of candidate realisations of one phone");
  c_rep->add_option("--sr", rep.sr, "SR CSV files")->required()->delimiter(',');
  c_rep->add_option("--target", rep.target, "Model phone p_o")->required();
  c_rep->add_option("--candidates", rep.candidates, "Candidate phones p_s")
      ->required()
      ->delimiter(',');
  c_rep->add_option("--out", rep.out, "Report CSV")->required();

  EmbedArgs emb;
  auto *c_emb = app.add_subcommand("embed", "2-D PCA embedding of PD vectors");
  c_emb->add_option("--pd", emb.pd, "PD CSV files")->required()->delimiter(',');
  c_emb->add_option("--manifest", emb.manifest, "Manifest mapping speakers to groups")
      ->required();
  c_emb->add_option("--groups", emb.groups, "Restrict to these groups")->delimiter(',');
  c_emb->add_option("--out", emb.out, "Embedding CSV")->required();

  SimulateArgs sim;
  auto *c_sim = app.add_subcommand("simulate", "Sample utterances from a synthetic language");
  c_sim->add_option("--spec", sim.spec, "Language spec JSON")->required();
  c_sim->add_option("--utts", sim.utts, "Number of utterances")->required();
  c_sim->add_option("--seed", sim.seed, "Random seed")->required();
  c_sim->add_option("--phones-per-utt", sim.phones_per_utt, "Phones per utterance");
  c_sim->add_option("--out-dir", sim.out_dir, "Output directory")->required();

  ExperimentArgs exp;
  auto *c_exp = app.add_subcommand("experiment", "Accentuation experiment over K and seeds");
  c_exp->add_option("--lang-a", exp.lang_a, "Accented-speech language (default built-in A)");
  c_exp->add_option("--lang-b", exp.lang_b, "Codebook language (default built-in B)");
  c_exp->add_option("--k", exp.ks, "Codebook sizes")->delimiter(',');
  c_exp->add_option("--seeds", exp.seeds, "Number of seeds");
  c_exp->add_option("--seed-base", exp.seed_base, "First seed");
  c_exp->add_option("--train-utts", exp.cfg.n_train_utts, "B utterances per codebook");
  c_exp->add_option("--eval-utts", exp.cfg.n_eval_utts, "A utterances per cell");
  c_exp->add_option("--phones-per-utt", exp.cfg.phones_per_utt, "Phones per utterance");
  c_exp->add_option("--min-run", exp.cfg.min_run, "Oracle decoder minimum run length");
  c_exp->add_option("--out", exp.out, "Report JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  kernels::SetWorkers(workers);
  RunRecord rec(app.get_subcommands().front()->get_name(),
                std::vector<std::string>(argv + 1, argv + argc));
  try {
    if (*c_train) RunTrain(train, rec);
    else if (*c_quant) RunQuantize(quant, rec);
    else if (*c_recon) RunReconstruct(recon, rec);
    else if (*c_er) RunEvalEr(er, rec);
    else if (*c_pd) RunEvalPd(pd, rec);
    else if (*c_na) RunEvalNa(na, rec);
    else if (*c_sr) RunEvalSr(sr, rec);
    else if (*c_bin) RunBinSr(bin, rec);
    else if (*c_rep) RunPhoneReport(rep, rec);
    else if (*c_emb) RunEmbed(emb, rec);
    else if (*c_sim) RunSimulate(sim, rec);
    else if (*c_exp) RunExperimentCmd(exp, rec);
  } catch (const DataError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fs::filesystem_error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace
}  // namespace unitaccent

int main(int argc, char **argv) { return unitaccent::Main(argc, argv); }
