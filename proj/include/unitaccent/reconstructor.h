// unitaccent/reconstructor.h

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

// Unit-to-feature decoding. The built-in decoder replaces each unit by its
// centroid, frame for frame. For an external decoder (e.g. a TTS model fed
// unit text) sequences are exported as JSON Lines jobs {utt_id, K, text}
// and the decoder's FUF1 output is imported back.

#ifndef UNITACCENT_RECONSTRUCTOR_H_
#define UNITACCENT_RECONSTRUCTOR_H_

#include <filesystem>
#include <span>
#include <string>

#include "unitaccent/featio.h"
#include "unitaccent/quantizer.h"
#include "unitaccent/unitops.h"

namespace unitaccent {

/// Row i of the result is the centroid of s.units[i]. Throws ShapeError if
/// s.k != cb.k().
FeatureMatrix DecodeCentroid(const UnitSequence &s, const Codebook &cb);

/// Mean squared Euclidean distance between corresponding rows.
double MeanSquaredError(const FeatureMatrix &a, const FeatureMatrix &b);

/// One JSON Lines record (no trailing newline) for an external decoder.
std::string ExportDecoderJob(const UnitSequence &s);
void WriteDecoderJobs(std::span<const UnitSequence> seqs,
                      const std::filesystem::path &path);

struct DecoderJob {
  std::string utt_id;
  std::uint32_t k = 0;
  std::string text;
};
std::vector<DecoderJob> ReadDecoderJobs(const std::filesystem::path &path);

/// Reads the decoder's FUF1 output and checks it belongs to
/// expected_utt_id.
FeatureMatrix ImportDecoderOutput(const std::filesystem::path &path,
                                  const std::string &expected_utt_id);

}  // namespace unitaccent

#endif  // UNITACCENT_RECONSTRUCTOR_H_
