// unitaccent/featio.h

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

// File formats shared with the extractor bridge.
//
//   FUF1 feature file:
//     "FUF1" | rows u32 | dims u32 | rows*dims f32 | meta_len u32 | meta JSON
//   All integers and floats little-endian. meta JSON carries utt_id and
//   (optionally) frame_hop_ms.
//
//   Posterior file: a FUF1 payload whose columns are phoneme posteriors,
//   plus a sidecar "<path>.meta.json" holding "phoneme_labels" and "intended".
//
//   Token files: JSON Lines, one {utt_id, level, tokens} object per line.
//   Manifest: one JSON document {"entries": [{utt_id, speaker_id, language,
//   group, path}, ...]}, relative paths resolved against the manifest's
//   directory.

#ifndef UNITACCENT_FEATIO_H_
#define UNITACCENT_FEATIO_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unitaccent/error.h"

namespace unitaccent {

/// Reserved intended-phoneme label for non-phonemic segments.
inline constexpr std::string_view kSilenceLabel = "SIL";

/// Per-utterance frames x dims matrix of 32-bit features, row-major.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;  // 0 x 1, empty id
  /// Throws ValidationError if dims == 0, data.size() != rows*dims or any
  /// value is non-finite.
  FeatureMatrix(std::string utt_id, std::size_t rows, std::size_t dims,
                std::vector<float> data,
                std::optional<double> frame_hop_ms = std::nullopt);

  const std::string &utt_id() const { return utt_id_; }
  std::size_t rows() const { return rows_; }
  std::size_t dims() const { return dims_; }
  std::span<const float> data() const { return data_; }
  std::span<const float> Row(std::size_t r) const {
    return std::span<const float>(data_).subspan(r * dims_, dims_);
  }
  std::optional<double> frame_hop_ms() const { return frame_hop_ms_; }

  /// Bit-exact comparison (distinguishes -0.0f from 0.0f).
  friend bool operator==(const FeatureMatrix &a, const FeatureMatrix &b);

 private:
  std::string utt_id_;
  std::size_t rows_ = 0;
  std::size_t dims_ = 1;
  std::vector<float> data_;
  std::optional<double> frame_hop_ms_;
};

void WriteFeatures(const FeatureMatrix &m, const std::filesystem::path &path);
FeatureMatrix ReadFeatures(const std::filesystem::path &path);

/// Phoneme posteriors for one utterance. Row r is a distribution over
/// phoneme_labels; intended[r] is the phoneme the speaker meant to produce
/// (or kSilenceLabel). Rows may be frames or whole segments.
class PosteriorSet {
 public:
  /// Row-sum tolerance applied on construction.
  static constexpr double kRowSumTolerance = 1e-4;

  PosteriorSet(std::string utt_id, std::vector<std::string> phoneme_labels,
               std::size_t rows, std::vector<float> data,
               std::vector<std::string> intended);

  const std::string &utt_id() const { return utt_id_; }
  const std::vector<std::string> &phoneme_labels() const { return labels_; }
  std::size_t rows() const { return rows_; }
  std::size_t num_phonemes() const { return labels_.size(); }
  std::span<const float> data() const { return data_; }
  std::span<const float> Row(std::size_t r) const {
    return std::span<const float>(data_).subspan(r * labels_.size(),
                                                 labels_.size());
  }
  const std::vector<std::string> &intended() const { return intended_; }

  friend bool operator==(const PosteriorSet &a, const PosteriorSet &b);

 private:
  std::string utt_id_;
  std::vector<std::string> labels_;
  std::size_t rows_;
  std::vector<float> data_;
  std::vector<std::string> intended_;
};

std::filesystem::path PosteriorSidecarPath(const std::filesystem::path &path);
void WritePosteriors(const PosteriorSet &ps, const std::filesystem::path &path);
PosteriorSet ReadPosteriors(const std::filesystem::path &path);

struct ManifestEntry {
  std::string utt_id;
  std::string speaker_id;
  std::string language;
  std::string group;  // rAE, rJE, sJE, ...
  std::filesystem::path path;

  friend bool operator==(const ManifestEntry &, const ManifestEntry &) = default;
};

class Manifest {
 public:
  Manifest() = default;
  /// Throws ValidationError on duplicate utt_id.
  explicit Manifest(std::vector<ManifestEntry> entries);

  const std::vector<ManifestEntry> &entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  friend bool operator==(const Manifest &, const Manifest &) = default;

 private:
  std::vector<ManifestEntry> entries_;
};

/// Relative entry paths are resolved against the manifest's directory and
/// must exist.
Manifest LoadManifest(const std::filesystem::path &path);
/// Paths are written as stored.
void SaveManifest(const Manifest &m, const std::filesystem::path &path);
/// Entries whose group equals `group` exactly, in original order.
Manifest FilterGroup(const Manifest &m, std::string_view group);

enum class TokenLevel { kWord, kPhone, kUnit };

const char *TokenLevelName(TokenLevel level);
TokenLevel ParseTokenLevel(std::string_view name);

struct TokenSequence {
  std::string utt_id;
  TokenLevel level = TokenLevel::kPhone;
  std::vector<std::string> tokens;
  // Optional routing fields used when grouping transcripts by speaker and
  // pairing them with a model utterance. Empty when absent.
  std::string speaker_id;
  std::string ref_id;

  friend bool operator==(const TokenSequence &, const TokenSequence &) = default;
};

/// Every token must be a non-empty string and all records share one level.
std::vector<TokenSequence> ReadTokenFile(const std::filesystem::path &path);
void WriteTokenFile(std::span<const TokenSequence> seqs,
                    const std::filesystem::path &path);

}  // namespace unitaccent

#endif  // UNITACCENT_FEATIO_H_
