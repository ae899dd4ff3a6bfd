// src/unitops.cc

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

#include "unitaccent/unitops.h"

#include <sstream>

#include "json.hpp"
#include "matrix-container.h"

namespace unitaccent {

using nlohmann::json;

void UnitSequence::Validate() const {
  if (k == 0) throw ValidationError("unit sequence " + utt_id + " has K = 0");
  for (std::size_t i = 0; i < units.size(); ++i)
    if (units[i] >= k)
      throw ValidationError("unit " + std::to_string(units[i]) + " at frame " +
                            std::to_string(i) + " of " + utt_id +
                            " is not < K = " + std::to_string(k));
}

void DedupUnitSequence::Validate() const {
  if (k == 0) throw ValidationError("unit sequence " + utt_id + " has K = 0");
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (runs[i].length == 0)
      throw ValidationError("zero-length run " + std::to_string(i) + " in " + utt_id);
    if (runs[i].unit >= k)
      throw ValidationError("run unit " + std::to_string(runs[i].unit) +
                            " is not < K = " + std::to_string(k));
    if (i > 0 && runs[i].unit == runs[i - 1].unit)
      throw ValidationError("adjacent runs " + std::to_string(i - 1) + "," +
                            std::to_string(i) + " share unit " +
                            std::to_string(runs[i].unit));
  }
}

std::size_t DedupUnitSequence::frames() const {
  std::size_t n = 0;
  for (const auto &r : runs) n += r.length;
  return n;
}

DedupUnitSequence Dedup(const UnitSequence &s) {
  s.Validate();
  DedupUnitSequence d{s.utt_id, {}, s.k};
  for (std::uint32_t u : s.units) {
    if (!d.runs.empty() && d.runs.back().unit == u)
      ++d.runs.back().length;
    else
      d.runs.push_back({u, 1});
  }
  return d;
}

UnitSequence Expand(const DedupUnitSequence &d) {
  d.Validate();
  UnitSequence s{d.utt_id, {}, d.k};
  s.units.reserve(d.frames());
  for (const auto &r : d.runs) s.units.insert(s.units.end(), r.length, r.unit);
  return s;
}

std::string ToChars(const UnitSequence &s) {
  s.Validate();
  if (s.k > kMaxTextUnits)
    throw ValidationError("K = " + std::to_string(s.k) +
                          " exceeds the text encoding's " +
                          std::to_string(kMaxTextUnits) + " units");
  std::string out;
  out.reserve(s.units.size() * 3);
  for (std::uint32_t u : s.units) {
    // Every code point in the block needs exactly three UTF-8 bytes.
    const char32_t cp = kUnitCodepointBase + u;
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
  return out;
}

namespace {

// Decodes one UTF-8 code point starting at text[*pos]; advances *pos.
char32_t DecodeUtf8(std::string_view text, std::size_t *pos) {
  const auto byte = [&](std::size_t i) {
    return static_cast<unsigned char>(text[i]);
  };
  const std::size_t i = *pos;
  const unsigned char b0 = byte(i);
  int len;
  char32_t cp;
  if (b0 < 0x80) {
    len = 1;
    cp = b0;
  } else if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    throw ValidationError("invalid UTF-8 lead byte at offset " + std::to_string(i));
  }
  if (i + len > text.size())
    throw ValidationError("truncated UTF-8 sequence at offset " + std::to_string(i));
  for (int j = 1; j < len; ++j) {
    const unsigned char b = byte(i + j);
    if ((b & 0xC0) != 0x80)
      throw ValidationError("invalid UTF-8 continuation at offset " +
                            std::to_string(i + j));
    cp = (cp << 6) | (b & 0x3F);
  }
  *pos = i + len;
  return cp;
}

std::string HexCodepoint(char32_t cp) {
  std::ostringstream os;
  os << std::hex << std::uppercase << static_cast<std::uint32_t>(cp);
  return os.str();
}

}  // namespace

UnitSequence FromChars(std::string_view text, std::uint32_t k,
                       std::string utt_id) {
  if (k == 0 || k > kMaxTextUnits)
    throw ValidationError("K = " + std::to_string(k) + " outside [1, " +
                          std::to_string(kMaxTextUnits) + "]");
  UnitSequence s{std::move(utt_id), {}, k};
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t at = pos;
    const char32_t cp = DecodeUtf8(text, &pos);
    if (cp < kUnitCodepointBase || cp >= kUnitCodepointBase + k)
      throw ValidationError("code point U+" + HexCodepoint(cp) + " at offset " +
                            std::to_string(at) +
                            " is outside the unit range for K = " +
                            std::to_string(k));
    s.units.push_back(static_cast<std::uint32_t>(cp - kUnitCodepointBase));
  }
  return s;
}

UnitSequence ToFrameWise(const UnitRecord &r) {
  if (const auto *s = std::get_if<UnitSequence>(&r)) {
    s->Validate();
    return *s;
  }
  return Expand(std::get<DedupUnitSequence>(r));
}

const std::string &RecordUttId(const UnitRecord &r) {
  return std::visit([](const auto &x) -> const std::string & { return x.utt_id; }, r);
}

std::vector<UnitRecord> ReadUnitFile(const std::filesystem::path &path) {
  std::istringstream is(internal::ReadWholeFile(path));
  std::vector<UnitRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path.string() + ":" + std::to_string(lineno);
    try {
      const json obj = json::parse(line);
      const std::string utt_id = obj.at("utt_id").get<std::string>();
      const std::uint32_t k = obj.at("K").get<std::uint32_t>();
      if (obj.contains("units")) {
        UnitSequence s{utt_id, obj.at("units").get<std::vector<std::uint32_t>>(), k};
        s.Validate();
        out.emplace_back(std::move(s));
      } else if (obj.contains("runs")) {
        DedupUnitSequence d{utt_id, {}, k};
        for (const auto &pair : obj.at("runs")) {
          if (!pair.is_array() || pair.size() != 2)
            throw ValidationError("run is not a [unit, length] pair");
          d.runs.push_back({pair[0].get<std::uint32_t>(), pair[1].get<std::uint32_t>()});
        }
        d.Validate();
        out.emplace_back(std::move(d));
      } else {
        throw ValidationError("record has neither \"units\" nor \"runs\"");
      }
    } catch (const json::exception &e) {
      throw LoadError(LoadErrorKind::kMetadata, where, e.what());
    } catch (const ValidationError &e) {
      throw LoadError(LoadErrorKind::kInvariant, where, e.what());
    }
  }
  return out;
}

void WriteUnitFile(std::span<const UnitRecord> records,
                   const std::filesystem::path &path) {
  std::string out;
  for (const auto &r : records) {
    json obj;
    if (const auto *s = std::get_if<UnitSequence>(&r)) {
      obj = {{"utt_id", s->utt_id}, {"K", s->k}, {"units", s->units}};
    } else {
      const auto &d = std::get<DedupUnitSequence>(r);
      json runs = json::array();
      for (const auto &run : d.runs) runs.push_back({run.unit, run.length});
      obj = {{"utt_id", d.utt_id}, {"K", d.k}, {"runs", runs}};
    }
    out += obj.dump();
    out += '\n';
  }
  internal::WriteWholeFile(path, out);
}

}  // namespace unitaccent
