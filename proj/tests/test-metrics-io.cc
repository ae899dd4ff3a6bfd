// tests/test-metrics-io.cc

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

#include "doctest.h"
#include "test-util.h"
#include "unitaccent/metrics-io.h"

using namespace unitaccent;

namespace {

PdVector RandPd(testing::TestRng &rng, const std::string &id, std::size_t p) {
  PdVector pd;
  pd.speaker_id = id;
  for (std::size_t i = 0; i < p; ++i) {
    pd.phoneme_labels.push_back(i % 3 ? "p" + std::to_string(i) : "q,\"" + std::to_string(i));
    const bool def = testing::RandInt(rng, 0, 4) != 0;
    pd.defined.push_back(def);
    pd.values.push_back(def ? testing::RandReal(rng, 0, 10) : NAN);
    pd.support.push_back(def ? testing::RandInt(rng, 1, 1000) : 0);
  }
  return pd;
}

bool SamePd(const PdVector &a, const PdVector &b) {
  if (a.speaker_id != b.speaker_id || a.phoneme_labels != b.phoneme_labels ||
      a.defined != b.defined || a.support != b.support)
    return false;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    if (a.defined[i] && a.values[i] != b.values[i]) return false;
  return true;
}

}  // namespace

TEST_CASE("PD csv: layout and round-trip") {
  testing::ScratchDir dir;
  PdVector pd;
  pd.speaker_id = "s1";
  pd.phoneme_labels = {"a", "b"};
  pd.values = {0.5, NAN};
  pd.defined = {1, 0};
  pd.support = {3, 0};
  WritePdCsv(dir / "pd.csv", std::vector<PdVector>{pd});
  CHECK(testing::ReadText(dir / "pd.csv") ==
        "speaker_id,phoneme,pd,support\ns1,a,0.5,3\ns1,b,nan,0\n");

  testing::TestRng rng(71);
  for (int t = 0; t < 200; ++t) {
    const std::size_t p = testing::RandInt(rng, 1, 10);
    std::vector<PdVector> pds;
    for (std::size_t s = 0; s < testing::RandInt(rng, 1, 5); ++s)
      pds.push_back(RandPd(rng, "spk" + std::to_string(s), p));
    for (auto &x : pds) x.phoneme_labels = pds[0].phoneme_labels;
    WritePdCsv(dir / "pd.csv", pds);
    const auto back = ReadPdCsv(dir / "pd.csv");
    REQUIRE(back.size() == pds.size());
    for (std::size_t i = 0; i < pds.size(); ++i) REQUIRE(SamePd(back[i], pds[i]));
  }
}

TEST_CASE("PD csv: malformed input") {
  testing::ScratchDir dir;
  testing::WriteText(dir / "a.csv", "speaker_id,phoneme,pd,support\ns1,a,0.5,3\ns2,b,0.5,3\n");
  CHECK_THROWS_AS(ReadPdCsv(dir / "a.csv"), LoadError);
  testing::WriteText(dir / "b.csv", "speaker_id,phoneme,pd\ns1,a,0.5\n");
  CHECK_THROWS_AS(ReadPdCsv(dir / "b.csv"), LoadError);
  testing::WriteText(dir / "c.csv", "speaker_id,phoneme,pd,support\ns1,a,zero,3\n");
  CHECK_THROWS_AS(ReadPdCsv(dir / "c.csv"), LoadError);
  testing::WriteText(dir / "d.csv", "");
  CHECK_THROWS_AS(ReadPdCsv(dir / "d.csv"), LoadError);
  CHECK_THROWS_AS(ReadPdCsv(dir / "missing.csv"), LoadError);
}

TEST_CASE("SR csv: round-trip keeps unsubstituted phones") {
  testing::ScratchDir dir;
  SubstitutionTable a{"A", {{"th", 4}, {"i", 2}}, {{{"th", "s"}, 0.75}, {{"th", "∅"}, 0.25}}};
  SubstitutionTable b{"B", {{"th", 4}, {"i", 2}}, {{{"i", "e"}, 0.5}}};
  WriteSrCsv(dir / "sr.csv", std::vector<SubstitutionTable>{a, b});
  const std::string text = testing::ReadText(dir / "sr.csv");
  CHECK(text.rfind("group,p_o,p_s,sr,model_count\n", 0) == 0);
  CHECK(text.find("A,i,,0,2\n") != std::string::npos);
  const auto back = ReadSrCsv(dir / "sr.csv");
  REQUIRE(back.size() == 2);
  CHECK(back[0].group_label == "A");
  CHECK(back[0].model_counts == a.model_counts);
  CHECK(back[0].rates == a.rates);
  CHECK(back[1].rates == b.rates);
  CHECK(back[1].model_counts == b.model_counts);

  testing::WriteText(dir / "neg.csv", "group,p_o,p_s,sr,model_count\nA,th,s,-0.1,4\n");
  CHECK_THROWS_AS(ReadSrCsv(dir / "neg.csv"), LoadError);
  testing::WriteText(dir / "cnt.csv",
                     "group,p_o,p_s,sr,model_count\nA,th,s,0.1,4\nA,th,t,0.1,5\n");
  CHECK_THROWS_AS(ReadSrCsv(dir / "cnt.csv"), LoadError);
}

TEST_CASE("other tables: layouts") {
  testing::ScratchDir dir;
  WriteNaCsv(dir / "na.csv", std::vector<NaRow>{{"rJE", "rJE", {0.25, 12}}});
  CHECK(testing::ReadText(dir / "na.csv") == "group_a,group_b,na,n_pairs\nrJE,rJE,0.25,12\n");

  std::vector<SrBin> bins(2);
  bins[0] = {0.1, INFINITY, 3, 0.125};
  bins[1] = {0.0, 0.1, 0, std::nullopt};
  WriteSrBinsCsv(dir / "bins.csv", bins);
  CHECK(testing::ReadText(dir / "bins.csv") ==
        "range_lo,range_hi,pair_count,mean_synth_sr\n0.1,inf,3,0.125\n0,0.1,0,\n");

  Embedding2D e;
  e.coords = {{1.5, -2}, {0, 0.25}};
  const std::vector<std::string> ids = {"s1", "s2"}, groups = {"rAE", "sJE"};
  WriteEmbeddingCsv(dir / "emb.csv", e, ids, groups);
  CHECK(testing::ReadText(dir / "emb.csv") ==
        "speaker_id,group,x,y\ns1,rAE,1.5,-2\ns2,sJE,0,0.25\n");
  CHECK_THROWS_AS(WriteEmbeddingCsv(dir / "emb.csv", e, std::vector<std::string>{"s1"}, groups),
                  ShapeError);

  const std::vector<PhoneReportRow> rows = {{"A", "s", 0.5, true}, {"A", "t", 0.0, false}};
  WritePhoneReportCsv(dir / "rep.csv", "th", rows);
  CHECK(testing::ReadText(dir / "rep.csv") ==
        "group,p_o,p_s,sr,is_max\nA,th,s,0.5,1\nA,th,t,0,0\n");
}
