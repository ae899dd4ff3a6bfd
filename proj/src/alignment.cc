// src/alignment.cc

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

#include "unitaccent/alignment.h"

#include <algorithm>
#include <unordered_map>

namespace unitaccent {

AlignmentResult Align(std::span<const std::string> ref,
                      std::span<const std::string> hyp) {
  const std::size_t n = ref.size(), m = hyp.size();
  // cost[i][j]: distance between ref[0, i) and hyp[0, j).
  std::vector<std::size_t> cost((n + 1) * (m + 1));
  auto at = [m](std::size_t i, std::size_t j) { return i * (m + 1) + j; };
  for (std::size_t i = 0; i <= n; ++i) cost[at(i, 0)] = i;
  for (std::size_t j = 0; j <= m; ++j) cost[at(0, j)] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t diag = cost[at(i - 1, j - 1)] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      cost[at(i, j)] = std::min({diag, cost[at(i - 1, j)] + 1, cost[at(i, j - 1)] + 1});
    }
  }

  AlignmentResult res;
  res.ref_len = n;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    const std::size_t here = cost[at(i, j)];
    if (i > 0 && j > 0 && ref[i - 1] == hyp[j - 1] && here == cost[at(i - 1, j - 1)]) {
      res.ops.push_back({EditKind::kMatch, ref[i - 1], hyp[j - 1]});
      ++res.counts.matches;
      --i, --j;
    } else if (i > 0 && j > 0 && here == cost[at(i - 1, j - 1)] + 1) {
      res.ops.push_back({EditKind::kSub, ref[i - 1], hyp[j - 1]});
      ++res.counts.subs;
      --i, --j;
    } else if (i > 0 && here == cost[at(i - 1, j)] + 1) {
      res.ops.push_back({EditKind::kDel, ref[i - 1], std::nullopt});
      ++res.counts.dels;
      --i;
    } else {
      res.ops.push_back({EditKind::kIns, std::nullopt, hyp[j - 1]});
      ++res.counts.ins;
      --j;
    }
  }
  std::reverse(res.ops.begin(), res.ops.end());
  return res;
}

AlignmentResult Align(const TokenSequence &ref, const TokenSequence &hyp) {
  if (ref.level != hyp.level)
    throw ShapeError(std::string("cannot align ") + TokenLevelName(ref.level) +
                     " tokens of " + ref.utt_id + " against " +
                     TokenLevelName(hyp.level) + " tokens of " + hyp.utt_id);
  return Align(std::span<const std::string>(ref.tokens),
               std::span<const std::string>(hyp.tokens));
}

double ErrorRate(const AlignmentResult &a) {
  if (a.ref_len == 0) throw DataError("error rate against an empty reference");
  return static_cast<double>(a.counts.errors()) / static_cast<double>(a.ref_len);
}

CorpusErrorRate ScoreCorpus(std::span<const TokenSequence> refs,
                            std::span<const TokenSequence> hyps) {
  std::unordered_map<std::string, const TokenSequence *> by_id;
  for (const auto &h : hyps) by_id.emplace(h.utt_id, &h);
  CorpusErrorRate out;
  for (const auto &r : refs) {
    auto it = by_id.find(r.utt_id);
    if (it == by_id.end())
      throw DataError("no hypothesis for reference utterance \"" + r.utt_id + "\"");
    const AlignmentResult a = Align(r, *it->second);
    out.counts.matches += a.counts.matches;
    out.counts.subs += a.counts.subs;
    out.counts.ins += a.counts.ins;
    out.counts.dels += a.counts.dels;
    out.ref_tokens += a.ref_len;
    ++out.utterances;
  }
  if (out.ref_tokens == 0) throw DataError("error rate against an empty reference corpus");
  out.rate = static_cast<double>(out.counts.errors()) / static_cast<double>(out.ref_tokens);
  return out;
}

}  // namespace unitaccent
