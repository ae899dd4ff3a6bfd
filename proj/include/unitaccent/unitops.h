// unitaccent/unitops.h

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

// Unit sequences: one unit index per frame, the run-length ("dedup") form,
// and the one-character-per-unit text encoding handed to text-input
// decoders. Unit u is written as code point U+4E00 + u.

#ifndef UNITACCENT_UNITOPS_H_
#define UNITACCENT_UNITOPS_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "unitaccent/error.h"

namespace unitaccent {

inline constexpr char32_t kUnitCodepointBase = 0x4E00;
/// Largest codebook the text encoding supports.
inline constexpr std::uint32_t kMaxTextUnits = 20000;

struct UnitSequence {
  std::string utt_id;
  std::vector<std::uint32_t> units;  // one per frame
  std::uint32_t k = 1;               // size of the originating codebook

  /// Throws ValidationError unless k >= 1 and every unit < k.
  void Validate() const;
  std::size_t size() const { return units.size(); }

  friend bool operator==(const UnitSequence &, const UnitSequence &) = default;
};

struct UnitRun {
  std::uint32_t unit = 0;
  std::uint32_t length = 0;

  friend bool operator==(const UnitRun &, const UnitRun &) = default;
};

struct DedupUnitSequence {
  std::string utt_id;
  std::vector<UnitRun> runs;
  std::uint32_t k = 1;

  /// Throws ValidationError on a zero-length run, a unit >= k, or two
  /// adjacent runs with the same unit.
  void Validate() const;
  /// Sum of run lengths.
  std::size_t frames() const;

  friend bool operator==(const DedupUnitSequence &, const DedupUnitSequence &) = default;
};

DedupUnitSequence Dedup(const UnitSequence &s);
/// Exact inverse of Dedup. Validates `d` first.
UnitSequence Expand(const DedupUnitSequence &d);

/// UTF-8 text, one code point per frame. Requires s.k <= kMaxTextUnits.
std::string ToChars(const UnitSequence &s);
/// Throws ValidationError on malformed UTF-8 or a code point outside
/// [U+4E00, U+4E00 + k).
UnitSequence FromChars(std::string_view text, std::uint32_t k,
                       std::string utt_id = {});

/// A record of a unit file, in either form.
using UnitRecord = std::variant<UnitSequence, DedupUnitSequence>;

/// Frame-wise view of either form.
UnitSequence ToFrameWise(const UnitRecord &r);
const std::string &RecordUttId(const UnitRecord &r);

/// JSON Lines: {"utt_id", "K", "units": [...]} or {"utt_id", "K",
/// "runs": [[unit, len], ...]}.
std::vector<UnitRecord> ReadUnitFile(const std::filesystem::path &path);
void WriteUnitFile(std::span<const UnitRecord> records,
                   const std::filesystem::path &path);

}  // namespace unitaccent

#endif  // UNITACCENT_UNITOPS_H_
