// tests/test-contract.cc

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

// The readers must accept what the Python extractors emit. The fixtures under
// tests/fixtures/extractors are written by make_fixtures.py in that
// directory, which encodes the formats with struct and json only.

#include <cmath>

#include "doctest.h"
#include "test-util.h"
#include "unitaccent/alignment.h"
#include "unitaccent/featio.h"
#include "unitaccent/pronunciation.h"
#include "unitaccent/quantizer.h"

using namespace unitaccent;

namespace {

const std::filesystem::path kFixtures = UNITACCENT_FIXTURE_DIR;

}  // namespace

TEST_CASE("contract: feature files and their manifest") {
  const Manifest m = LoadManifest(kFixtures / "features" / "manifest.json");
  REQUIRE(m.size() == 2);
  CHECK(m.entries()[0].group == "rAE");
  CHECK(FilterGroup(m, "rJE").size() == 1);

  const FeatureMatrix f = ReadFeatures(m.entries()[0].path);
  CHECK(f.utt_id() == "spk1-utt1");
  CHECK(f.rows() == 50);
  CHECK(f.dims() == 4);
  REQUIRE(f.frame_hop_ms().has_value());
  CHECK(*f.frame_hop_ms() == 20.0);
  for (std::size_t t = 0; t < 50; ++t)
    for (std::size_t d = 0; d < 4; ++d)
      REQUIRE(f.Row(t)[d] == static_cast<float>(std::sin(0.1 * t + d)));

  // Writing the parsed matrix back reproduces the extractor's bytes.
  testing::ScratchDir dir;
  for (const auto &e : m.entries()) {
    WriteFeatures(ReadFeatures(e.path), dir / "copy.fuf");
    CHECK(testing::ReadText(dir / "copy.fuf") == testing::ReadText(e.path));
  }

  // The features feed straight into training.
  std::vector<FeatureMatrix> feats;
  for (const auto &e : m.entries()) feats.push_back(ReadFeatures(e.path));
  KMeansConfig cfg;
  cfg.k = 4;
  CHECK(TrainCodebook(feats, cfg).k() == 4);
}

TEST_CASE("contract: posterior files with sidecars") {
  const Manifest m = LoadManifest(kFixtures / "posteriors" / "manifest.json");
  REQUIRE(m.size() == 2);
  const PosteriorSet p = ReadPosteriors(m.entries()[0].path);
  CHECK(p.utt_id() == "spk1-utt1");
  CHECK(p.phoneme_labels() == std::vector<std::string>{"a", "i", "s", "th"});
  CHECK(p.rows() == 7);
  CHECK(p.intended().front() == "SIL");
  CHECK(p.intended()[2] == "th");
  for (std::size_t r = 0; r < p.rows(); ++r) {
    double sum = 0.0;
    for (float x : p.Row(r)) sum += x;
    CHECK(std::abs(sum - 1.0) < 1e-4);
  }

  const PosteriorSet sil = ReadPosteriors(m.entries()[1].path);
  CHECK(sil.intended() == std::vector<std::string>(3, "SIL"));
  const AveragedPosteriors app = AveragePosteriors("spk2", std::vector<PosteriorSet>{sil});
  for (std::size_t q = 0; q < app.num_phonemes(); ++q) CHECK_FALSE(app.defined(q));

  const AveragedPosteriors native = AveragePosteriors("spk1", std::vector<PosteriorSet>{p});
  CHECK(native.support == std::vector<std::uint64_t>{1, 1, 1, 2});
  const PdVector pd = PronunciationDeviation(native, std::vector<AveragedPosteriors>{native});
  CHECK(pd.num_defined() == 4);
  for (double v : pd.values) CHECK(std::abs(v) < 1e-9);
}

TEST_CASE("contract: word and phone transcripts") {
  const auto words = ReadTokenFile(kFixtures / "transcripts" / "words.jsonl");
  const auto phones = ReadTokenFile(kFixtures / "transcripts" / "phones.jsonl");
  REQUIRE(words.size() == 2);
  REQUIRE(phones.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(words[i].utt_id == phones[i].utt_id);
    CHECK(words[i].level == TokenLevel::kWord);
    CHECK(phones[i].level == TokenLevel::kPhone);
  }
  // Silent audio transcribes to an empty but valid record.
  CHECK(words[1].tokens.empty());
  CHECK(phones[0].tokens == std::vector<std::string>{"ð", "ə", "s", "iː"});
  CHECK(phones[0].speaker_id == "spk1");
  CHECK(ScoreCorpus(words, words).rate == 0.0);
  CHECK(ScoreCorpus(phones, phones).ref_tokens == 4);
}
