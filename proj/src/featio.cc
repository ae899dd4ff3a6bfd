// src/featio.cc

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

#include "unitaccent/featio.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "matrix-container.h"

namespace unitaccent {

using nlohmann::json;

namespace {

constexpr std::string_view kFeatureMagic = "FUF1";

bool BitEqual(std::span<const float> a, std::span<const float> b) {
  return a.size() == b.size() &&
         (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(float)) == 0);
}

std::string RequireString(const json &obj, const char *key,
                          const std::string &where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string())
    throw LoadError(LoadErrorKind::kMetadata, where,
                    std::string("missing string field \"") + key + "\"");
  return it->get<std::string>();
}

std::vector<std::string> RequireStringArray(const json &obj, const char *key,
                                            const std::string &where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_array())
    throw LoadError(LoadErrorKind::kMetadata, where,
                    std::string("missing array field \"") + key + "\"");
  std::vector<std::string> out;
  out.reserve(it->size());
  for (const auto &v : *it) {
    if (!v.is_string())
      throw LoadError(LoadErrorKind::kMetadata, where,
                      std::string("non-string element in \"") + key + "\"");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- features

FeatureMatrix::FeatureMatrix(std::string utt_id, std::size_t rows,
                             std::size_t dims, std::vector<float> data,
                             std::optional<double> frame_hop_ms)
    : utt_id_(std::move(utt_id)),
      rows_(rows),
      dims_(dims),
      data_(std::move(data)),
      frame_hop_ms_(frame_hop_ms) {
  if (dims_ == 0) throw ValidationError("feature matrix needs dims >= 1");
  if (data_.size() != rows_ * dims_)
    throw ValidationError("feature data length " + std::to_string(data_.size()) +
                          " != " + std::to_string(rows_) + "x" +
                          std::to_string(dims_));
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (!std::isfinite(data_[i]))
      throw ValidationError("non-finite feature value at element " +
                            std::to_string(i) + " of " + utt_id_);
  if (frame_hop_ms_ && !std::isfinite(*frame_hop_ms_))
    throw ValidationError("non-finite frame_hop_ms");
}

bool operator==(const FeatureMatrix &a, const FeatureMatrix &b) {
  if (a.utt_id_ != b.utt_id_ || a.rows_ != b.rows_ || a.dims_ != b.dims_)
    return false;
  if (a.frame_hop_ms_.has_value() != b.frame_hop_ms_.has_value()) return false;
  if (a.frame_hop_ms_ && std::memcmp(&*a.frame_hop_ms_, &*b.frame_hop_ms_,
                                     sizeof(double)) != 0)
    return false;
  return BitEqual(a.data_, b.data_);
}

void WriteFeatures(const FeatureMatrix &m, const std::filesystem::path &path) {
  json meta = {{"utt_id", m.utt_id()}};
  if (m.frame_hop_ms()) meta["frame_hop_ms"] = *m.frame_hop_ms();
  internal::WriteMatrixContainer(path, kFeatureMagic, m.rows(), m.dims(),
                                 m.data(), meta);
}

FeatureMatrix ReadFeatures(const std::filesystem::path &path) {
  internal::MatrixContainer c = internal::ReadMatrixContainer(path, kFeatureMagic);
  const std::string where = path.string();
  std::string utt_id = RequireString(c.meta, "utt_id", where);
  std::optional<double> hop;
  if (auto it = c.meta.find("frame_hop_ms"); it != c.meta.end() && !it->is_null()) {
    if (!it->is_number())
      throw LoadError(LoadErrorKind::kMetadata, where, "frame_hop_ms not a number");
    hop = it->get<double>();
  }
  try {
    return FeatureMatrix(std::move(utt_id), c.rows, c.cols, std::move(c.data), hop);
  } catch (const ValidationError &e) {
    throw LoadError(LoadErrorKind::kInvariant, where, e.what());
  }
}

// -------------------------------------------------------------- posteriors

PosteriorSet::PosteriorSet(std::string utt_id,
                           std::vector<std::string> phoneme_labels,
                           std::size_t rows, std::vector<float> data,
                           std::vector<std::string> intended)
    : utt_id_(std::move(utt_id)),
      labels_(std::move(phoneme_labels)),
      rows_(rows),
      data_(std::move(data)),
      intended_(std::move(intended)) {
  const std::size_t p = labels_.size();
  if (p == 0) throw ValidationError("posterior set has no phoneme labels");
  std::unordered_set<std::string> label_set;
  for (const auto &l : labels_) {
    if (l.empty()) throw ValidationError("empty phoneme label");
    if (!label_set.insert(l).second)
      throw ValidationError("duplicate phoneme label \"" + l + "\"");
  }
  if (data_.size() != rows_ * p)
    throw ValidationError("posterior dimension mismatch: " +
                          std::to_string(data_.size()) + " values for " +
                          std::to_string(rows_) + " rows x " +
                          std::to_string(p) + " labels");
  if (intended_.size() != rows_)
    throw ValidationError("intended has " + std::to_string(intended_.size()) +
                          " labels for " + std::to_string(rows_) + " rows");
  for (std::size_t r = 0; r < rows_; ++r) {
    double sum = 0.0;
    for (std::size_t k = 0; k < p; ++k) {
      const float v = data_[r * p + k];
      if (!(v >= 0.0f && v <= 1.0f))
        throw ValidationError("posterior entry outside [0,1] at row " +
                              std::to_string(r));
      sum += v;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance)
      throw ValidationError("posterior row " + std::to_string(r) +
                            " row sum " + std::to_string(sum) + " != 1");
    if (intended_[r] != kSilenceLabel && !label_set.count(intended_[r]))
      throw ValidationError("intended label \"" + intended_[r] + "\" at row " +
                            std::to_string(r) + " not in phoneme_labels");
  }
}

bool operator==(const PosteriorSet &a, const PosteriorSet &b) {
  return a.utt_id_ == b.utt_id_ && a.labels_ == b.labels_ &&
         a.rows_ == b.rows_ && a.intended_ == b.intended_ &&
         BitEqual(a.data_, b.data_);
}

std::filesystem::path PosteriorSidecarPath(const std::filesystem::path &path) {
  std::filesystem::path p = path;
  p += ".meta.json";
  return p;
}

void WritePosteriors(const PosteriorSet &ps, const std::filesystem::path &path) {
  json meta = {{"utt_id", ps.utt_id()}};
  internal::WriteMatrixContainer(path, kFeatureMagic, ps.rows(),
                                 ps.num_phonemes(), ps.data(), meta);
  json side = {{"phoneme_labels", ps.phoneme_labels()},
               {"intended", ps.intended()}};
  internal::WriteWholeFile(PosteriorSidecarPath(path), side.dump(1) + "\n");
}

PosteriorSet ReadPosteriors(const std::filesystem::path &path) {
  internal::MatrixContainer c = internal::ReadMatrixContainer(path, kFeatureMagic);
  const std::string where = path.string();
  std::string utt_id = RequireString(c.meta, "utt_id", where);

  const std::filesystem::path side_path = PosteriorSidecarPath(path);
  const std::string side_where = side_path.string();
  json side;
  try {
    side = json::parse(internal::ReadWholeFile(side_path));
  } catch (const json::exception &e) {
    throw LoadError(LoadErrorKind::kMetadata, side_where, e.what());
  }
  if (!side.is_object())
    throw LoadError(LoadErrorKind::kMetadata, side_where, "sidecar is not an object");
  auto labels = RequireStringArray(side, "phoneme_labels", side_where);
  auto intended = RequireStringArray(side, "intended", side_where);
  if (labels.size() != c.cols)
    throw LoadError(LoadErrorKind::kInvariant, where,
                    "posterior dimension mismatch: payload has " +
                        std::to_string(c.cols) + " columns, sidecar lists " +
                        std::to_string(labels.size()) + " labels");
  try {
    return PosteriorSet(std::move(utt_id), std::move(labels), c.rows,
                        std::move(c.data), std::move(intended));
  } catch (const ValidationError &e) {
    throw LoadError(LoadErrorKind::kInvariant, where, e.what());
  }
}

// ---------------------------------------------------------------- manifest

Manifest::Manifest(std::vector<ManifestEntry> entries)
    : entries_(std::move(entries)) {
  std::unordered_set<std::string> seen;
  for (const auto &e : entries_) {
    if (e.utt_id.empty()) throw ValidationError("manifest entry with empty utt_id");
    if (!seen.insert(e.utt_id).second)
      throw ValidationError("duplicate utt_id \"" + e.utt_id + "\" in manifest");
  }
}

Manifest LoadManifest(const std::filesystem::path &path) {
  const std::string where = path.string();
  json doc;
  try {
    doc = json::parse(internal::ReadWholeFile(path));
  } catch (const json::exception &e) {
    throw LoadError(LoadErrorKind::kMetadata, where, e.what());
  }
  auto it = doc.find("entries");
  if (!doc.is_object() || it == doc.end() || !it->is_array())
    throw LoadError(LoadErrorKind::kMetadata, where, "expected {\"entries\": [...]}");
  const std::filesystem::path base = path.parent_path();
  std::vector<ManifestEntry> entries;
  entries.reserve(it->size());
  for (const auto &obj : *it) {
    if (!obj.is_object())
      throw LoadError(LoadErrorKind::kMetadata, where, "entry is not an object");
    ManifestEntry e;
    e.utt_id = RequireString(obj, "utt_id", where);
    e.speaker_id = RequireString(obj, "speaker_id", where);
    e.language = RequireString(obj, "language", where);
    e.group = RequireString(obj, "group", where);
    e.path = RequireString(obj, "path", where);
    if (e.path.is_relative()) e.path = base / e.path;
    if (!std::filesystem::exists(e.path))
      throw LoadError(LoadErrorKind::kInvariant, where,
                      "path of \"" + e.utt_id + "\" does not resolve: " +
                          e.path.string());
    entries.push_back(std::move(e));
  }
  try {
    return Manifest(std::move(entries));
  } catch (const ValidationError &e) {
    throw LoadError(LoadErrorKind::kInvariant, where, e.what());
  }
}

void SaveManifest(const Manifest &m, const std::filesystem::path &path) {
  json entries = json::array();
  for (const auto &e : m.entries())
    entries.push_back({{"utt_id", e.utt_id},
                       {"speaker_id", e.speaker_id},
                       {"language", e.language},
                       {"group", e.group},
                       {"path", e.path.generic_string()}});
  internal::WriteWholeFile(path, json{{"entries", entries}}.dump(1) + "\n");
}

Manifest FilterGroup(const Manifest &m, std::string_view group) {
  std::vector<ManifestEntry> out;
  for (const auto &e : m.entries())
    if (e.group == group) out.push_back(e);
  return Manifest(std::move(out));
}

// ------------------------------------------------------------------ tokens

const char *TokenLevelName(TokenLevel level) {
  switch (level) {
    case TokenLevel::kWord: return "word";
    case TokenLevel::kPhone: return "phone";
    case TokenLevel::kUnit: return "unit";
  }
  return "?";
}

TokenLevel ParseTokenLevel(std::string_view name) {
  if (name == "word") return TokenLevel::kWord;
  if (name == "phone") return TokenLevel::kPhone;
  if (name == "unit") return TokenLevel::kUnit;
  throw ValidationError("unknown token level \"" + std::string(name) + "\"");
}

std::vector<TokenSequence> ReadTokenFile(const std::filesystem::path &path) {
  std::istringstream is(internal::ReadWholeFile(path));
  std::vector<TokenSequence> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path.string() + ":" + std::to_string(lineno);
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception &e) {
      throw LoadError(LoadErrorKind::kMetadata, where, e.what());
    }
    if (!obj.is_object())
      throw LoadError(LoadErrorKind::kMetadata, where, "record is not an object");
    TokenSequence seq;
    seq.utt_id = RequireString(obj, "utt_id", where);
    try {
      seq.level = ParseTokenLevel(RequireString(obj, "level", where));
    } catch (const ValidationError &e) {
      throw LoadError(LoadErrorKind::kMetadata, where, e.what());
    }
    seq.tokens = RequireStringArray(obj, "tokens", where);
    for (const auto &t : seq.tokens)
      if (t.empty())
        throw LoadError(LoadErrorKind::kInvariant, where, "empty token string");
    if (auto it = obj.find("speaker_id"); it != obj.end() && it->is_string())
      seq.speaker_id = it->get<std::string>();
    if (auto it = obj.find("ref_id"); it != obj.end() && it->is_string())
      seq.ref_id = it->get<std::string>();
    if (!out.empty() && out.front().level != seq.level)
      throw LoadError(LoadErrorKind::kInvariant, where,
                      std::string("level \"") + TokenLevelName(seq.level) +
                          "\" differs from file level \"" +
                          TokenLevelName(out.front().level) + "\"");
    out.push_back(std::move(seq));
  }
  return out;
}

void WriteTokenFile(std::span<const TokenSequence> seqs,
                    const std::filesystem::path &path) {
  std::string out;
  for (const auto &s : seqs) {
    json obj = {{"utt_id", s.utt_id},
                {"level", TokenLevelName(s.level)},
                {"tokens", s.tokens}};
    if (!s.speaker_id.empty()) obj["speaker_id"] = s.speaker_id;
    if (!s.ref_id.empty()) obj["ref_id"] = s.ref_id;
    out += obj.dump();
    out += '\n';
  }
  internal::WriteWholeFile(path, out);
}

}  // namespace unitaccent
