// src/substitution.cc

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

#include "unitaccent/substitution.h"

#include <set>
#include <unordered_map>

#include "unitaccent/alignment.h"

namespace unitaccent {

namespace {

struct SpeakerTally {
  std::map<PhonePair, std::uint64_t> subs;
  std::map<std::string, std::uint64_t> aligned;  // p_o occurrences aligned
};

const TokenSequence &PairModel(const TokenSequence &utt,
                               std::span<const TokenSequence> model,
                               const std::unordered_map<std::string, std::size_t> &index) {
  if (!utt.ref_id.empty()) {
    auto it = index.find(utt.ref_id);
    if (it == index.end())
      throw DataError("utterance " + utt.utt_id + " names unknown model utterance \"" +
                      utt.ref_id + "\"");
    return model[it->second];
  }
  if (auto it = index.find(utt.utt_id); it != index.end()) return model[it->second];
  if (model.size() == 1) return model.front();
  throw DataError("cannot pair utterance " + utt.utt_id +
                  " with a model utterance (set ref_id)");
}

}  // namespace

double SubstitutionTable::Rate(const std::string &p_o, const std::string &p_s) const {
  auto it = rates.find({p_o, p_s});
  return it == rates.end() ? 0.0 : it->second;
}

SubstitutionTable SubstitutionRates(std::span<const TokenSequence> model,
                                    std::span<const SpeakerTranscripts> speakers,
                                    const std::string &group_label,
                                    SrAggregation agg) {
  SubstitutionTable table;
  table.group_label = group_label;
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < model.size(); ++i) {
    index.emplace(model[i].utt_id, i);
    for (const auto &t : model[i].tokens) ++table.model_counts[t];
  }
  if (table.model_counts.empty()) throw DataError("substitution rates: empty model speech");
  if (speakers.empty()) throw DataError("substitution rates: empty group " + group_label);

  const std::string del(kDeletionSymbol);
  std::vector<SpeakerTally> tallies(speakers.size());
  for (std::size_t s = 0; s < speakers.size(); ++s) {
    SpeakerTally &t = tallies[s];
    for (const auto &utt : speakers[s].utterances) {
      const AlignmentResult a = Align(PairModel(utt, model, index), utt);
      for (const auto &op : a.ops) {
        switch (op.kind) {
          case EditKind::kMatch:
            ++t.aligned[*op.ref];
            break;
          case EditKind::kSub:
            ++t.aligned[*op.ref];
            ++t.subs[{*op.ref, *op.hyp}];
            break;
          case EditKind::kDel:
            ++t.aligned[*op.ref];
            ++t.subs[{*op.ref, del}];
            break;
          case EditKind::kIns:
            break;
        }
      }
    }
  }

  std::set<PhonePair> pairs;
  for (const auto &t : tallies)
    for (const auto &[pair, n] : t.subs) pairs.insert(pair);

  for (const auto &pair : pairs) {
    double rate = 0.0;
    if (agg == SrAggregation::kPooled) {
      std::uint64_t total = 0, den = 0;
      for (const auto &t : tallies) {
        if (auto it = t.subs.find(pair); it != t.subs.end()) total += it->second;
        if (auto it = t.aligned.find(pair.first); it != t.aligned.end()) den += it->second;
      }
      rate = static_cast<double>(total) / static_cast<double>(den);
    } else {
      double sum = 0.0;
      std::size_t readers = 0;
      for (const auto &t : tallies) {
        auto den = t.aligned.find(pair.first);
        if (den == t.aligned.end() || den->second == 0) continue;
        ++readers;
        if (auto it = t.subs.find(pair); it != t.subs.end())
          sum += static_cast<double>(it->second) / static_cast<double>(den->second);
      }
      rate = sum / static_cast<double>(readers);
    }
    if (rate > 0.0) table.rates.emplace(pair, rate);
  }
  return table;
}

std::vector<SpeakerTranscripts> GroupBySpeaker(std::span<const TokenSequence> seqs) {
  std::vector<SpeakerTranscripts> out;
  std::unordered_map<std::string, std::size_t> where;
  for (const auto &s : seqs) {
    const std::string &id = s.speaker_id.empty() ? s.utt_id : s.speaker_id;
    auto [it, fresh] = where.emplace(id, out.size());
    if (fresh) out.push_back({id, {}});
    out[it->second].utterances.push_back(s);
  }
  return out;
}

std::vector<SrBin> BinSubstitutions(const SubstitutionTable &real,
                                    const SubstitutionTable &synth,
                                    std::span<const double> edges) {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!(edges[i] > 0.0) || (i > 0 && !(edges[i] < edges[i - 1])))
      throw ValidationError("SR bin edges must be positive and strictly decreasing");
  }
  if (real.model_counts != synth.model_counts)
    throw ShapeError("SR tables " + real.group_label + " and " + synth.group_label +
                     " were computed against different model speech");

  std::vector<SrBin> bins(edges.size() + 1);
  for (std::size_t b = 0; b < bins.size(); ++b) {
    bins[b].lo = b < edges.size() ? edges[b] : 0.0;
    bins[b].hi = b == 0 ? std::numeric_limits<double>::infinity() : edges[b - 1];
  }
  std::set<PhonePair> pairs;
  for (const auto *t : {&real, &synth})
    for (const auto &[pair, r] : t->rates)
      if (pair.second != kDeletionSymbol) pairs.insert(pair);

  std::vector<double> sums(bins.size(), 0.0);
  for (const auto &pair : pairs) {
    const double r = real.Rate(pair.first, pair.second);
    std::size_t b = 0;
    while (b < edges.size() && r < edges[b]) ++b;
    ++bins[b].pair_count;
    sums[b] += synth.Rate(pair.first, pair.second);
  }
  for (std::size_t b = 0; b < bins.size(); ++b)
    if (bins[b].pair_count > 0)
      bins[b].mean_synth_sr = sums[b] / static_cast<double>(bins[b].pair_count);
  return bins;
}

std::vector<PhoneReportRow> PhoneSubstitutionReport(
    std::span<const SubstitutionTable> tables, const std::string &target,
    std::span<const std::string> candidates) {
  std::vector<PhoneReportRow> rows;
  for (const auto &t : tables) {
    auto it = t.model_counts.find(target);
    if (it == t.model_counts.end() || it->second == 0)
      throw DataError("phone \"" + target + "\" does not occur in the model speech of " +
                      t.group_label);
    const std::size_t first = rows.size();
    double best = 0.0;
    for (const auto &c : candidates) {
      const double sr = t.Rate(target, c);
      rows.push_back({t.group_label, c, sr, false});
      best = std::max(best, sr);
    }
    if (best > 0.0)
      for (std::size_t i = first; i < rows.size(); ++i) rows[i].is_max = rows[i].sr == best;
  }
  return rows;
}

}  // namespace unitaccent
