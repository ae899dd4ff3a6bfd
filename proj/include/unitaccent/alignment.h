// unitaccent/alignment.h

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

// Levenshtein alignment of token sequences with unit costs, and the error
// rates (WER / PER) derived from it.

#ifndef UNITACCENT_ALIGNMENT_H_
#define UNITACCENT_ALIGNMENT_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "unitaccent/featio.h"

namespace unitaccent {

enum class EditKind { kMatch, kSub, kIns, kDel };

struct EditOp {
  EditKind kind;
  std::optional<std::string> ref;  // absent for insertions
  std::optional<std::string> hyp;  // absent for deletions

  friend bool operator==(const EditOp &, const EditOp &) = default;
};

struct EditCounts {
  std::size_t matches = 0;
  std::size_t subs = 0;
  std::size_t ins = 0;
  std::size_t dels = 0;

  std::size_t errors() const { return subs + ins + dels; }
};

struct AlignmentResult {
  std::vector<EditOp> ops;  // in sequence order
  EditCounts counts;
  std::size_t ref_len = 0;

  std::size_t distance() const { return counts.errors(); }
};

/// Minimum edit-distance alignment, sub = ins = del = 1. Among optimal
/// alignments the backtrace (from the end) prefers match, then
/// substitution, then deletion, then insertion.
AlignmentResult Align(std::span<const std::string> ref,
                      std::span<const std::string> hyp);
/// Throws ShapeError when the two sequences are at different levels.
AlignmentResult Align(const TokenSequence &ref, const TokenSequence &hyp);

/// (subs + ins + dels) / ref_len; can exceed 1. Throws DataError when the
/// reference is empty.
double ErrorRate(const AlignmentResult &a);

struct CorpusErrorRate {
  EditCounts counts;
  std::size_t ref_tokens = 0;
  std::size_t utterances = 0;
  double rate = 0.0;
};

/// Pairs hyps to refs by utt_id and pools counts over the corpus. Throws
/// DataError if a reference has no hypothesis or the corpus has no
/// reference tokens.
CorpusErrorRate ScoreCorpus(std::span<const TokenSequence> refs,
                            std::span<const TokenSequence> hyps);

}  // namespace unitaccent

#endif  // UNITACCENT_ALIGNMENT_H_
