// tests/test-unitops.cc

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

#include "doctest.h"
#include "test-util.h"
#include "unitaccent/unitops.h"

using namespace unitaccent;

namespace {

UnitSequence Seq(std::vector<std::uint32_t> units, std::uint32_t k = 50) {
  return {"u", std::move(units), k};
}

UnitSequence RandomSeq(testing::TestRng &rng, std::uint32_t max_k = 200) {
  const auto k = static_cast<std::uint32_t>(testing::RandInt(rng, 1, max_k));
  UnitSequence s{"r", {}, k};
  const std::size_t n = testing::RandInt(rng, 0, 60);
  // Short alphabets make long runs likely.
  const auto hi = static_cast<std::uint32_t>(std::min<std::size_t>(k - 1, testing::RandInt(rng, 0, 3)));
  for (std::size_t i = 0; i < n; ++i)
    s.units.push_back(static_cast<std::uint32_t>(testing::RandInt(rng, 0, hi)));
  return s;
}

// Independent UTF-8 encoder for the 3-byte range used by unit text.
std::string Utf8(char32_t c) {
  std::string s;
  s += static_cast<char>(0xE0 | (c >> 12));
  s += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
  s += static_cast<char>(0x80 | (c & 0x3F));
  return s;
}

}  // namespace

TEST_CASE("dedup: examples") {
  const DedupUnitSequence d = Dedup(Seq({12, 12, 12, 7, 7, 12}));
  CHECK(d.runs == std::vector<UnitRun>{{12, 3}, {7, 2}, {12, 1}});
  CHECK(d.frames() == 6);
  CHECK(Dedup(Seq({})).runs.empty());
  CHECK(Dedup(Seq({5})).runs == std::vector<UnitRun>{{5, 1}});
  CHECK(Dedup(Seq({5})).utt_id == "u");
}

TEST_CASE("expand: examples and errors") {
  CHECK(Expand({"u", {{12, 3}, {7, 2}}, 50}).units ==
        std::vector<std::uint32_t>{12, 12, 12, 7, 7});
  CHECK_THROWS_AS(Expand({"u", {{3, 0}}, 50}), ValidationError);
  CHECK_THROWS_AS(Expand({"u", {{3, 1}, {3, 2}}, 50}), ValidationError);
  CHECK_THROWS_AS(Expand({"u", {{50, 1}}, 50}), ValidationError);
}

TEST_CASE("to_chars / from_chars: examples") {
  CHECK(ToChars(Seq({0, 1})) == Utf8(0x4E00) + Utf8(0x4E01));
  CHECK(ToChars(Seq({})).empty());
  CHECK(FromChars(Utf8(0x4E00 + 49), 50).units == std::vector<std::uint32_t>{49});

  std::string msg;
  try {
    FromChars("A", 50);
  } catch (const ValidationError &e) {
    msg = e.what();
  }
  CHECK(msg.find("outside the unit range") != std::string::npos);
  CHECK_THROWS_AS(FromChars(Utf8(0x4E00 + 50), 50), ValidationError);
  CHECK_THROWS_AS(FromChars(Utf8(0x4DFF), 50), ValidationError);
  CHECK_THROWS_AS(FromChars("\xE4\xB8", 50), ValidationError);          // truncated
  CHECK_THROWS_AS(FromChars("\xE0\x80\x80", 50), ValidationError);      // overlong
  CHECK_THROWS_AS(FromChars("\xFF", 50), ValidationError);
  CHECK_THROWS_AS(ToChars(Seq({0}, kMaxTextUnits + 1)), ValidationError);
}

TEST_CASE("unit sequence validation") {
  CHECK_THROWS_AS(Seq({50}).Validate(), ValidationError);
  CHECK_THROWS_AS(Seq({0}, 0).Validate(), ValidationError);
  CHECK_NOTHROW(Seq({49}).Validate());
}

TEST_CASE("dedup/expand and to_chars/from_chars are inverses (property)") {
  testing::TestRng rng(2024);
  for (int t = 0; t < 1000; ++t) {
    const UnitSequence s = RandomSeq(rng);
    const DedupUnitSequence d = Dedup(s);
    REQUIRE(Expand(d) == s);
    for (std::size_t i = 1; i < d.runs.size(); ++i) REQUIRE(d.runs[i].unit != d.runs[i - 1].unit);
    REQUIRE(FromChars(ToChars(s), s.k, s.utt_id) == s);
  }
  // Full unit range, including the top of the text encoding.
  for (int t = 0; t < 1000; ++t) {
    UnitSequence s{"big", {}, kMaxTextUnits};
    for (int i = 0; i < 8; ++i)
      s.units.push_back(static_cast<std::uint32_t>(testing::RandInt(rng, 0, kMaxTextUnits - 1)));
    REQUIRE(FromChars(ToChars(s), s.k, "big") == s);
  }
}

TEST_CASE("unit files: both forms round-trip") {
  testing::ScratchDir dir;
  std::vector<UnitRecord> recs = {Seq({1, 1, 2}), DedupUnitSequence{"d", {{4, 2}, {1, 1}}, 8}};
  WriteUnitFile(recs, dir / "u.jsonl");
  const auto back = ReadUnitFile(dir / "u.jsonl");
  REQUIRE(back.size() == 2);
  CHECK(std::get<UnitSequence>(back[0]) == std::get<UnitSequence>(recs[0]));
  CHECK(std::get<DedupUnitSequence>(back[1]) == std::get<DedupUnitSequence>(recs[1]));
  CHECK(ToFrameWise(back[1]).units == std::vector<std::uint32_t>{4, 4, 1});
  CHECK(RecordUttId(back[1]) == "d");

  testing::WriteText(dir / "bad.jsonl", R"({"utt_id":"x","K":4,"units":[4]})");
  CHECK_THROWS_AS(ReadUnitFile(dir / "bad.jsonl"), LoadError);
  testing::WriteText(dir / "bad2.jsonl", R"({"utt_id":"x","K":4})");
  CHECK_THROWS_AS(ReadUnitFile(dir / "bad2.jsonl"), LoadError);
}

TEST_CASE("unit files: random records round-trip (property)") {
  testing::ScratchDir dir;
  testing::TestRng rng(77);
  for (int t = 0; t < 1000; ++t) {
    std::vector<UnitRecord> recs;
    const std::size_t n = testing::RandInt(rng, 1, 3);
    for (std::size_t i = 0; i < n; ++i) {
      UnitSequence s = RandomSeq(rng);
      s.utt_id = "u" + std::to_string(i);
      if (testing::RandInt(rng, 0, 1))
        recs.emplace_back(Dedup(s));
      else
        recs.emplace_back(s);
    }
    WriteUnitFile(recs, dir / "u.jsonl");
    REQUIRE(ReadUnitFile(dir / "u.jsonl") == recs);
  }
}
