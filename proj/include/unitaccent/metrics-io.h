// unitaccent/metrics-io.h

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

// CSV exports of the accent metrics. All files are UTF-8 with a header row:
//
//   PD          speaker_id,phoneme,pd,support        (pd "nan" if undefined)
//   NA          group_a,group_b,na,n_pairs
//   SR          group,p_o,p_s,sr,model_count         (p_s empty: p_o never
//                                                      substituted)
//   SR bins     range_lo,range_hi,pair_count,mean_synth_sr
//   embedding   speaker_id,group,x,y
//   report      group,p_o,p_s,sr,is_max

#ifndef UNITACCENT_METRICS_IO_H_
#define UNITACCENT_METRICS_IO_H_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "unitaccent/embedding.h"
#include "unitaccent/pronunciation.h"
#include "unitaccent/substitution.h"

namespace unitaccent {

void WritePdCsv(const std::filesystem::path &path, std::span<const PdVector> pds);
/// Speakers in first-appearance order; every speaker must list the same
/// phonemes in the same order.
std::vector<PdVector> ReadPdCsv(const std::filesystem::path &path);

struct NaRow {
  std::string group_a;
  std::string group_b;
  NaResult result;
};
void WriteNaCsv(const std::filesystem::path &path, std::span<const NaRow> rows);

void WriteSrCsv(const std::filesystem::path &path, std::span<const SubstitutionTable> tables);
/// Tables in first-appearance order of their group label.
std::vector<SubstitutionTable> ReadSrCsv(const std::filesystem::path &path);

void WriteSrBinsCsv(const std::filesystem::path &path, std::span<const SrBin> bins);

/// `speaker_ids` and `groups` are parallel to emb.coords.
void WriteEmbeddingCsv(const std::filesystem::path &path, const Embedding2D &emb,
                       std::span<const std::string> speaker_ids,
                       std::span<const std::string> groups);

void WritePhoneReportCsv(const std::filesystem::path &path, const std::string &target,
                         std::span<const PhoneReportRow> rows);

}  // namespace unitaccent

#endif  // UNITACCENT_METRICS_IO_H_
