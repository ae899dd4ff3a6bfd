// tests/test-substitution.cc

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

#include <cmath>
#include <set>

#include "doctest.h"
#include "test-util.h"
#include "unitaccent/substitution.h"

using namespace unitaccent;

namespace {

TokenSequence Phones(const std::string &id, std::vector<std::string> toks,
                     const std::string &speaker = "", const std::string &ref = "") {
  return {id, TokenLevel::kPhone, std::move(toks), speaker, ref};
}

const std::string kDel(kDeletionSymbol);

}  // namespace

TEST_CASE("SR: a single consistent substitution has rate one") {
  const std::vector<TokenSequence> model = {Phones("m", {"th", "i", "s"})};
  const std::vector<SpeakerTranscripts> spk = {{"s1", {Phones("m", {"s", "i", "s"})}}};
  const SubstitutionTable t = SubstitutionRates(model, spk, "g");
  CHECK(t.group_label == "g");
  CHECK(t.Rate("th", "s") == 1.0);
  CHECK(t.Rate("i", "s") == 0.0);
  CHECK(t.model_counts.at("th") == 1);
  CHECK(t.model_counts.at("s") == 1);
  CHECK(t.rates.size() == 1);
}

TEST_CASE("SR: per-speaker mean versus pooled") {
  const std::vector<TokenSequence> model = {Phones("m", {"th", "a"})};
  // s1 reads it twice, substituting once; s2 never substitutes.
  const std::vector<SpeakerTranscripts> spk = {
      {"s1", {Phones("r1", {"s", "a"}, "s1", "m"), Phones("r2", {"th", "a"}, "s1", "m")}},
      {"s2", {Phones("r3", {"th", "a"}, "s2", "m")}}};
  CHECK(SubstitutionRates(model, spk, "g").Rate("th", "s") == doctest::Approx(0.25));
  CHECK(SubstitutionRates(model, spk, "g", SrAggregation::kPooled).Rate("th", "s") ==
        doctest::Approx(1.0 / 3));

  const std::vector<SpeakerTranscripts> two = {{"a", {Phones("m", {"s", "a"})}},
                                               {"b", {Phones("m", {"th", "a"})}}};
  CHECK(SubstitutionRates(model, two, "g").Rate("th", "s") == doctest::Approx(0.5));
}

TEST_CASE("SR: deletions are tallied, insertions ignored") {
  const std::vector<TokenSequence> model = {Phones("m", {"a", "b", "c"})};
  const std::vector<SpeakerTranscripts> spk = {{"s", {Phones("m", {"a", "x", "c", "y"})}},
                                               {"t", {Phones("m", {"a", "c"})}}};
  const SubstitutionTable t = SubstitutionRates(model, spk, "g");
  CHECK(t.Rate("b", "x") == doctest::Approx(0.5));
  CHECK(t.Rate("b", kDel) == doctest::Approx(0.5));
  CHECK(t.Rate("c", "y") == 0.0);
}

TEST_CASE("SR: rates out of each phone sum to at most one (property)") {
  testing::TestRng rng(51);
  const std::vector<std::string> alphabet = {"a", "b", "c", "d", "e"};
  for (int t = 0; t < 300; ++t) {
    std::vector<TokenSequence> model;
    for (int u = 0; u < 3; ++u) {
      std::vector<std::string> toks(testing::RandInt(rng, 1, 10));
      for (auto &x : toks) x = alphabet[testing::RandInt(rng, 0, 4)];
      model.push_back(Phones("m" + std::to_string(u), toks));
    }
    std::vector<SpeakerTranscripts> spk(testing::RandInt(rng, 1, 4));
    for (std::size_t s = 0; s < spk.size(); ++s) {
      spk[s].speaker_id = "s" + std::to_string(s);
      for (const auto &m : model) {
        std::vector<std::string> toks(testing::RandInt(rng, 0, 12));
        for (auto &x : toks) x = alphabet[testing::RandInt(rng, 0, 4)];
        spk[s].utterances.push_back(Phones(m.utt_id, toks));
      }
    }
    for (auto agg : {SrAggregation::kPerSpeakerMean, SrAggregation::kPooled}) {
      const SubstitutionTable tab = SubstitutionRates(model, spk, "g", agg);
      std::map<std::string, double> out;
      for (const auto &[pair, r] : tab.rates) {
        REQUIRE(r > 0.0);
        REQUIRE(pair.first != pair.second);
        REQUIRE(tab.model_counts.count(pair.first) == 1);
        out[pair.first] += r;
      }
      for (const auto &[p, s] : out) REQUIRE(s <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("SR: pairing and errors") {
  const std::vector<TokenSequence> model = {Phones("m1", {"a"}), Phones("m2", {"b"})};
  const std::vector<SpeakerTranscripts> orphan = {{"s", {Phones("zz", {"a"})}}};
  CHECK_THROWS_AS(SubstitutionRates(model, orphan, "g"), DataError);
  CHECK_THROWS_AS(SubstitutionRates(std::vector<TokenSequence>{}, orphan, "g"), DataError);
  CHECK_THROWS_AS(SubstitutionRates(model, std::vector<SpeakerTranscripts>{}, "g"), DataError);
  // A single model utterance pairs with anything.
  const std::vector<TokenSequence> single = {Phones("m", {"a"})};
  CHECK(SubstitutionRates(single, orphan, "g").Rate("a", "x") == 0.0);

  const std::vector<TokenSequence> flat = {Phones("u1", {"a"}, "x"), Phones("u2", {"b"}),
                                           Phones("u3", {"c"}, "x")};
  const auto grouped = GroupBySpeaker(flat);
  REQUIRE(grouped.size() == 2);
  CHECK(grouped[0].speaker_id == "x");
  CHECK(grouped[0].utterances.size() == 2);
  CHECK(grouped[1].speaker_id == "u2");
}

TEST_CASE("bins: examples") {
  SubstitutionTable real{"real", {{"a", 10}, {"b", 10}}, {}};
  SubstitutionTable synth{"synth", {{"a", 10}, {"b", 10}}, {}};
  real.rates = {{{"a", "x"}, 0.2}, {{"a", "y"}, 0.03}, {{"b", "x"}, 0.005}, {{"b", kDel}, 0.5}};
  synth.rates = {{{"a", "x"}, 0.4}, {{"a", "y"}, 0.01}, {{"b", "z"}, 0.07}};
  const auto bins = BinSubstitutions(real, synth);
  REQUIRE(bins.size() == 5);
  CHECK(bins[0].lo == 0.1);
  CHECK(std::isinf(bins[0].hi));
  CHECK(bins[0].pair_count == 1);
  CHECK(*bins[0].mean_synth_sr == doctest::Approx(0.4));
  CHECK(bins[1].pair_count == 0);
  CHECK_FALSE(bins[1].mean_synth_sr.has_value());
  CHECK(bins[2].pair_count == 1);
  CHECK(*bins[2].mean_synth_sr == doctest::Approx(0.01));
  CHECK(bins[3].pair_count == 0);
  // (b, x) at 0.005 and (b, z) unseen in real both land in the bottom bin.
  CHECK(bins[4].lo == 0.0);
  CHECK(bins[4].hi == 0.01);
  CHECK(bins[4].pair_count == 2);
  CHECK(*bins[4].mean_synth_sr == doctest::Approx(0.035));

  const std::vector<double> bad = {0.01, 0.1};
  CHECK_THROWS(BinSubstitutions(real, synth, bad));
  SubstitutionTable other = synth;
  other.model_counts["a"] = 11;
  CHECK_THROWS_AS(BinSubstitutions(real, other), ShapeError);
}

TEST_CASE("bins: counts add up to the number of observed pairs (property)") {
  testing::TestRng rng(52);
  for (int t = 0; t < 200; ++t) {
    SubstitutionTable real{"r", {{"a", 5}, {"b", 5}, {"c", 5}}, {}}, synth = real;
    std::set<PhonePair> all;
    for (auto *tab : {&real, &synth}) {
      for (int i = 0; i < 6; ++i) {
        PhonePair p{std::string(1, 'a' + testing::RandInt(rng, 0, 2)),
                    std::string(1, 'a' + testing::RandInt(rng, 0, 5))};
        if (p.first == p.second) continue;
        tab->rates[p] = testing::RandReal(rng, 0.001, 0.3);
        all.insert(p);
      }
    }
    std::size_t n = 0;
    for (const auto &b : BinSubstitutions(real, synth)) n += b.pair_count;
    REQUIRE(n == all.size());
  }
}

TEST_CASE("phone report flags the largest candidate per table") {
  SubstitutionTable a{"A", {{"th", 4}}, {{{"th", "s"}, 0.5}, {{"th", "t"}, 0.25}}};
  SubstitutionTable b{"B", {{"th", 4}}, {}};
  const std::vector<SubstitutionTable> tabs = {a, b};
  const std::vector<std::string> cands = {"s", "t", "f"};
  const auto rows = PhoneSubstitutionReport(tabs, "th", cands);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].group == "A");
  CHECK(rows[0].is_max);
  CHECK_FALSE(rows[1].is_max);
  CHECK(rows[2].sr == 0.0);
  for (int i = 3; i < 6; ++i) CHECK_FALSE(rows[i].is_max);
  CHECK_THROWS_AS(PhoneSubstitutionReport(tabs, "zh", cands), DataError);
}
