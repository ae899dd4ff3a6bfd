// src/metrics-io.cc

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

#include "unitaccent/metrics-io.h"

#include <cmath>
#include <unordered_map>

#include "csv.h"

namespace unitaccent {

using internal::CsvWriter;
using internal::FormatDouble;

void WritePdCsv(const std::filesystem::path &path, std::span<const PdVector> pds) {
  CsvWriter w({"speaker_id", "phoneme", "pd", "support"});
  for (const auto &pd : pds)
    for (std::size_t p = 0; p < pd.phoneme_labels.size(); ++p)
      w.AddRow({pd.speaker_id, pd.phoneme_labels[p], FormatDouble(pd.values[p]),
                std::to_string(pd.support[p])});
  w.Save(path);
}

std::vector<PdVector> ReadPdCsv(const std::filesystem::path &path) {
  const internal::CsvTable t = internal::ReadCsv(path);
  const std::size_t c_spk = t.Column("speaker_id", path), c_ph = t.Column("phoneme", path),
                    c_pd = t.Column("pd", path), c_sup = t.Column("support", path);
  std::vector<PdVector> out;
  std::unordered_map<std::string, std::size_t> where;
  for (const auto &row : t.rows) {
    auto [it, fresh] = where.emplace(row[c_spk], out.size());
    if (fresh) {
      out.emplace_back();
      out.back().speaker_id = row[c_spk];
    }
    PdVector &v = out[it->second];
    const double x = internal::ParseDouble(row[c_pd], path);
    v.phoneme_labels.push_back(row[c_ph]);
    v.values.push_back(x);
    v.defined.push_back(std::isnan(x) ? 0 : 1);
    v.support.push_back(internal::ParseCount(row[c_sup], path));
  }
  if (out.empty()) throw LoadError(LoadErrorKind::kMetadata, path.string(), "no PD rows");
  for (const auto &v : out)
    if (v.phoneme_labels != out.front().phoneme_labels)
      throw LoadError(LoadErrorKind::kInvariant, path.string(),
                      "speaker " + v.speaker_id + " lists different phonemes than " +
                          out.front().speaker_id);
  return out;
}

void WriteNaCsv(const std::filesystem::path &path, std::span<const NaRow> rows) {
  CsvWriter w({"group_a", "group_b", "na", "n_pairs"});
  for (const auto &r : rows)
    w.AddRow({r.group_a, r.group_b, FormatDouble(r.result.na), std::to_string(r.result.n_pairs)});
  w.Save(path);
}

void WriteSrCsv(const std::filesystem::path &path, std::span<const SubstitutionTable> tables) {
  CsvWriter w({"group", "p_o", "p_s", "sr", "model_count"});
  for (const auto &t : tables) {
    for (const auto &[p_o, count] : t.model_counts) {
      bool any = false;
      for (auto it = t.rates.lower_bound({p_o, ""}); it != t.rates.end() && it->first.first == p_o;
           ++it) {
        w.AddRow({t.group_label, p_o, it->first.second, FormatDouble(it->second),
                  std::to_string(count)});
        any = true;
      }
      if (!any) w.AddRow({t.group_label, p_o, "", "0", std::to_string(count)});
    }
  }
  w.Save(path);
}

std::vector<SubstitutionTable> ReadSrCsv(const std::filesystem::path &path) {
  const internal::CsvTable t = internal::ReadCsv(path);
  const std::size_t c_g = t.Column("group", path), c_o = t.Column("p_o", path),
                    c_s = t.Column("p_s", path), c_sr = t.Column("sr", path),
                    c_n = t.Column("model_count", path);
  std::vector<SubstitutionTable> out;
  std::unordered_map<std::string, std::size_t> where;
  for (const auto &row : t.rows) {
    auto [it, fresh] = where.emplace(row[c_g], out.size());
    if (fresh) {
      out.emplace_back();
      out.back().group_label = row[c_g];
    }
    SubstitutionTable &tab = out[it->second];
    const std::uint64_t n = internal::ParseCount(row[c_n], path);
    auto [mc, inserted] = tab.model_counts.emplace(row[c_o], n);
    if (!inserted && mc->second != n)
      throw LoadError(LoadErrorKind::kInvariant, path.string(),
                      "inconsistent model_count for " + row[c_o] + " in group " + row[c_g]);
    const double sr = internal::ParseDouble(row[c_sr], path);
    if (!(sr >= 0.0) || !std::isfinite(sr))
      throw LoadError(LoadErrorKind::kInvariant, path.string(),
                      "negative or non-finite sr for " + row[c_o] + " -> " + row[c_s]);
    if (!row[c_s].empty() && sr > 0.0) tab.rates[{row[c_o], row[c_s]}] = sr;
  }
  return out;
}

void WriteSrBinsCsv(const std::filesystem::path &path, std::span<const SrBin> bins) {
  CsvWriter w({"range_lo", "range_hi", "pair_count", "mean_synth_sr"});
  for (const auto &b : bins)
    w.AddRow({FormatDouble(b.lo), FormatDouble(b.hi), std::to_string(b.pair_count),
              b.mean_synth_sr ? FormatDouble(*b.mean_synth_sr) : ""});
  w.Save(path);
}

void WriteEmbeddingCsv(const std::filesystem::path &path, const Embedding2D &emb,
                       std::span<const std::string> speaker_ids,
                       std::span<const std::string> groups) {
  if (speaker_ids.size() != emb.coords.size() || groups.size() != emb.coords.size())
    throw ShapeError("embedding export: labels do not match the number of points");
  CsvWriter w({"speaker_id", "group", "x", "y"});
  for (std::size_t i = 0; i < emb.coords.size(); ++i)
    w.AddRow({speaker_ids[i], groups[i], FormatDouble(emb.coords[i][0]),
              FormatDouble(emb.coords[i][1])});
  w.Save(path);
}

void WritePhoneReportCsv(const std::filesystem::path &path, const std::string &target,
                         std::span<const PhoneReportRow> rows) {
  CsvWriter w({"group", "p_o", "p_s", "sr", "is_max"});
  for (const auto &r : rows)
    w.AddRow({r.group, target, r.candidate, FormatDouble(r.sr), r.is_max ? "1" : "0"});
  w.Save(path);
}

}  // namespace unitaccent
