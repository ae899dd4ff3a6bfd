// tests/test-reconstructor.cc

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
#include "unitaccent/reconstructor.h"

using namespace unitaccent;

TEST_CASE("decode: each unit becomes its centroid") {
  const Codebook cb(3, 2, {0, 0, 1, 2, -3, 4});
  const FeatureMatrix m = DecodeCentroid({"d", {2, 0, 2, 1}, 3}, cb);
  CHECK(m.utt_id() == "d");
  CHECK(m.rows() == 4);
  CHECK(m.dims() == 2);
  const std::vector<float> want = {-3, 4, 0, 0, -3, 4, 1, 2};
  CHECK(std::vector<float>(m.data().begin(), m.data().end()) == want);
  CHECK(DecodeCentroid({"e", {}, 3}, cb).rows() == 0);
  CHECK_THROWS_AS(DecodeCentroid({"d", {0}, 4}, cb), ShapeError);
}

TEST_CASE("decode: MSE against the source equals the codebook inertia") {
  testing::TestRng rng(21);
  for (int t = 0; t < 30; ++t) {
    const std::size_t dims = testing::RandInt(rng, 1, 6), k = testing::RandInt(rng, 1, 16);
    const Codebook cb(k, dims, testing::RandFloats(rng, k * dims));
    const FeatureMatrix m = testing::RandMatrix(rng, testing::RandInt(rng, 1, 400), dims);
    const FeatureMatrix rec = DecodeCentroid(Quantize(m, cb), cb);
    const double inertia = Inertia(std::vector<FeatureMatrix>{m}, cb);
    REQUIRE(MeanSquaredError(m, rec) == doctest::Approx(inertia).epsilon(1e-9));
    // Decoded frames sit on centroids, so quantizing again is the identity.
    REQUIRE(Quantize(rec, cb).units == Quantize(m, cb).units);
    REQUIRE(MeanSquaredError(rec, DecodeCentroid(Quantize(rec, cb), cb)) == 0.0);
  }
}

TEST_CASE("MSE: examples and shape errors") {
  const FeatureMatrix a("a", 2, 2, {0, 0, 1, 1});
  const FeatureMatrix b("b", 2, 2, {3, 4, 1, 1});
  CHECK(MeanSquaredError(a, b) == 12.5);
  CHECK(MeanSquaredError(a, a) == 0.0);
  CHECK(MeanSquaredError(FeatureMatrix("x", 0, 2, {}), FeatureMatrix("y", 0, 2, {})) == 0.0);
  CHECK_THROWS_AS(MeanSquaredError(a, FeatureMatrix("c", 1, 2, {0, 0})), ShapeError);
  CHECK_THROWS_AS(MeanSquaredError(a, FeatureMatrix("c", 2, 1, {0, 0})), ShapeError);
}

TEST_CASE("decoder jobs: export, read back, import") {
  testing::ScratchDir dir;
  const UnitSequence s{"utt1", {0, 0, 5}, 8};
  CHECK(ExportDecoderJob(s) == "{\"K\":8,\"text\":\"\xE4\xB8\x80\xE4\xB8\x80\xE4\xB8\x85\","
                               "\"utt_id\":\"utt1\"}");
  const std::vector<UnitSequence> seqs = {s, {"utt2", {}, 8}};
  WriteDecoderJobs(seqs, dir / "jobs.jsonl");
  const auto jobs = ReadDecoderJobs(dir / "jobs.jsonl");
  REQUIRE(jobs.size() == 2);
  CHECK(jobs[0].utt_id == "utt1");
  CHECK(jobs[0].k == 8);
  CHECK(FromChars(jobs[0].text, jobs[0].k).units == s.units);
  CHECK(jobs[1].text.empty());

  WriteFeatures(FeatureMatrix("utt1", 3, 2, {1, 2, 3, 4, 5, 6}), dir / "out.fuf");
  CHECK(ImportDecoderOutput(dir / "out.fuf", "utt1").rows() == 3);
  try {
    ImportDecoderOutput(dir / "out.fuf", "utt2");
    FAIL("expected LoadError");
  } catch (const LoadError &e) {
    CHECK(e.kind() == LoadErrorKind::kInvariant);
  }

  testing::WriteText(dir / "bad.jsonl", "{\"utt_id\":\"x\",\"K\":2,\"text\":\"A\"}\n");
  CHECK_THROWS_AS(ReadDecoderJobs(dir / "bad.jsonl"), LoadError);
  testing::WriteText(dir / "bad2.jsonl", "not json\n");
  CHECK_THROWS_AS(ReadDecoderJobs(dir / "bad2.jsonl"), LoadError);
}
