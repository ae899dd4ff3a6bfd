// unitaccent/synthlang.h

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

// Synthetic "phonologies": each phone is a diagonal Gaussian in feature
// space, phone strings follow a first-order Markov chain and every phone
// occurrence lasts a uniform number of frames.
//
// Language spec (JSON):
//   {"name": "A", "dims": 8,
//    "phones": [{"label": "a", "mean": [...], "stdev": [...]}, ...],
//    "transition": [[...], ...],      // row-stochastic, P x P
//    "start": [...],                  // optional, uniform if absent
//    "duration_range": [min, max]}

#ifndef UNITACCENT_SYNTHLANG_H_
#define UNITACCENT_SYNTHLANG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "unitaccent/featio.h"

namespace unitaccent {

struct SyntheticPhone {
  std::string label;
  std::vector<double> mean;
  std::vector<double> stdev;
};

struct SyntheticLanguage {
  std::string name;
  std::size_t dims = 0;
  std::vector<SyntheticPhone> phones;
  std::vector<double> transition;  // P x P row-major
  std::vector<double> start;       // P
  std::uint32_t min_duration = 1;
  std::uint32_t max_duration = 1;

  std::size_t num_phones() const { return phones.size(); }
  /// Index of a phone label, or num_phones() if absent.
  std::size_t PhoneIndex(const std::string &label) const;
  /// Throws ValidationError naming the offending field.
  void Validate() const;
};

inline constexpr double kStochasticTolerance = 1e-9;

/// Parses and validates a language spec document.
SyntheticLanguage MakeLanguage(const std::string &spec_json);
SyntheticLanguage LoadLanguage(const std::filesystem::path &path);
/// Pretty-printed spec; MakeLanguage(LanguageToJson(l)) reproduces l.
std::string LanguageToJson(const SyntheticLanguage &lang);

/// The two default languages of the accent experiment. Both have 10 phones
/// in 8 dimensions and share 8 of them. A's "th" has no close counterpart in
/// B (its nearest neighbour is the shared "s"); A's "v" sits just outside
/// B's "w".
SyntheticLanguage DefaultLanguageA();
SyntheticLanguage DefaultLanguageB();

struct SampledUtterance {
  FeatureMatrix features;
  TokenSequence phones;                    // ground truth, level phone
  std::vector<std::uint32_t> frame_phone;  // phone index per frame
};

/// Markov-samples n_phones phones and emits frames from their Gaussians.
/// Fully determined by (lang, n_phones, seed). Throws DataError if
/// n_phones == 0.
SampledUtterance SampleUtterance(const SyntheticLanguage &lang, std::size_t n_phones,
                                 std::uint64_t seed, const std::string &utt_id = "utt");

/// Per frame, index of the nearest phone mean (lowest index on ties).
/// Throws ShapeError on a dims mismatch.
std::vector<std::uint32_t> NearestPhones(const FeatureMatrix &m, const SyntheticLanguage &lang);

/// Frame-wise nearest phone, grouped into runs; runs shorter than min_run
/// frames are dropped and the surviving runs collapsed, so [a a b a a]
/// decodes to [a].
TokenSequence OraclePhoneDecode(const FeatureMatrix &m, const SyntheticLanguage &lang,
                                std::size_t min_run = 2);

}  // namespace unitaccent

#endif  // UNITACCENT_SYNTHLANG_H_
