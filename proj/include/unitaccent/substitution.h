// unitaccent/substitution.h

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

// Phone substitution rates against a model (reference) speech:
//
//   SR(p_s | p_o; Y) = #(p_o realised as p_s in Y) / #(p_o in model speech)
//
// Each speaker's transcripts are aligned to the model utterances they read.
// By default the group rate is the mean of the per-speaker rates; pooled
// aggregation sums both counts, numerator and denominator, over the group.
// Deletions are tallied under the reserved phone kDeletionSymbol;
// insertions are ignored.

#ifndef UNITACCENT_SUBSTITUTION_H_
#define UNITACCENT_SUBSTITUTION_H_

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "unitaccent/featio.h"

namespace unitaccent {

inline constexpr std::string_view kDeletionSymbol = "\u2205";

using PhonePair = std::pair<std::string, std::string>;  // (p_o, p_s)

struct SubstitutionTable {
  std::string group_label;
  std::map<std::string, std::uint64_t> model_counts;  // p_o -> count
  std::map<PhonePair, double> rates;                   // non-zero only

  /// 0 for unobserved pairs.
  double Rate(const std::string &p_o, const std::string &p_s) const;
};

/// One speaker's transcripts. An utterance is paired with the model
/// utterance named by its ref_id, else the one sharing its utt_id, else the
/// only model utterance when there is exactly one.
struct SpeakerTranscripts {
  std::string speaker_id;
  std::vector<TokenSequence> utterances;
};

enum class SrAggregation { kPerSpeakerMean, kPooled };

/// Throws DataError on an empty model or group or an utterance that cannot
/// be paired with a model utterance.
SubstitutionTable SubstitutionRates(std::span<const TokenSequence> model,
                                    std::span<const SpeakerTranscripts> speakers,
                                    const std::string &group_label,
                                    SrAggregation agg = SrAggregation::kPerSpeakerMean);

/// Groups transcripts by speaker_id (falling back to utt_id), keeping
/// first-appearance order.
std::vector<SpeakerTranscripts> GroupBySpeaker(std::span<const TokenSequence> seqs);

struct SrBin {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  std::size_t pair_count = 0;
  std::optional<double> mean_synth_sr;  // empty when the bin has no pairs
};

inline const std::vector<double> kDefaultSrEdges = {0.1, 0.05, 0.02, 0.01};

/// Bins every (p_o, p_s) pair observed in either table (deletions excluded)
/// by its rate in `real`, then averages the `synth` rate within each bin.
/// Edges must be strictly decreasing and positive; the bins are
/// [e0, inf), [e1, e0), ..., [0, e_last). Throws ShapeError if the tables
/// were computed against different model speech.
std::vector<SrBin> BinSubstitutions(const SubstitutionTable &real,
                                    const SubstitutionTable &synth,
                                    std::span<const double> edges = kDefaultSrEdges);

struct PhoneReportRow {
  std::string group;
  std::string candidate;
  double sr = 0.0;
  bool is_max = false;  // largest non-zero rate within its table
};

/// SR(candidate | target) for every table and candidate. Throws DataError
/// if target does not occur in a table's model speech.
std::vector<PhoneReportRow> PhoneSubstitutionReport(
    std::span<const SubstitutionTable> tables, const std::string &target,
    std::span<const std::string> candidates);

}  // namespace unitaccent

#endif  // UNITACCENT_SUBSTITUTION_H_
