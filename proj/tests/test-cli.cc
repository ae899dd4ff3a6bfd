// tests/test-cli.cc

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

// End-to-end checks of the unitaccent binary.

#include <sys/wait.h>

#include <cstdio>

#include "doctest.h"
#include "json.hpp"
#include "test-util.h"
#include "unitaccent/featio.h"
#include "unitaccent/quantizer.h"
#include "unitaccent/unitops.h"

using namespace unitaccent;
using nlohmann::json;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome Run(const testing::ScratchDir &dir, const std::string &args) {
  const std::string err_path = (dir / "stderr.txt").string();
  const std::string cmd =
      std::string("'") + UNITACCENT_CLI + "' " + args + " 2>'" + err_path + "'";
  Outcome o;
  FILE *p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) o.out.append(buf, n);
  const int status = pclose(p);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  o.err = testing::ReadText(err_path);
  return o;
}

std::string Q(const std::filesystem::path &p) { return "'" + p.string() + "'"; }

}  // namespace

TEST_CASE("cli: help, version, usage errors") {
  testing::ScratchDir dir;
  CHECK(Run(dir, "--help").code == 0);
  const Outcome v = Run(dir, "--version");
  CHECK(v.code == 0);
  CHECK(v.out.find("0.1.0") != std::string::npos);
  const Outcome none = Run(dir, "");
  CHECK(none.code == 1);
  const Outcome bad = Run(dir, "eval-er --ref a --hyp b --bogus");
  CHECK(bad.code == 1);
  CHECK(bad.err.find("error:") != std::string::npos);
  CHECK(Run(dir, "train-kmeans --k 4").code == 1);
  CHECK(Run(dir, "frobnicate").code == 1);
}

TEST_CASE("cli: eval-er prints the rate and reports data errors") {
  testing::ScratchDir dir;
  WriteTokenFile(std::vector<TokenSequence>{{"u", TokenLevel::kWord, {"a", "b"}, "", ""}},
                 dir / "ref.jsonl");
  WriteTokenFile(std::vector<TokenSequence>{{"u", TokenLevel::kWord, {"a", "b"}, "", ""}},
                 dir / "hyp.jsonl");
  WriteTokenFile(std::vector<TokenSequence>{{"u", TokenLevel::kWord, {"a"}, "", ""}},
                 dir / "short.jsonl");
  const std::string base = "eval-er --level word --ref " + Q(dir / "ref.jsonl") + " --hyp ";
  const Outcome same = Run(dir, base + Q(dir / "hyp.jsonl"));
  CHECK(same.code == 0);
  CHECK(same.out == "0.0\n");
  const Outcome half = Run(dir, base + Q(dir / "short.jsonl") + " --out " + Q(dir / "er.json"));
  CHECK(half.code == 0);
  CHECK(half.out == "0.5\n");
  const json er = json::parse(testing::ReadText(dir / "er.json"));
  CHECK(er.dump().find("0.5") != std::string::npos);
  CHECK(std::filesystem::exists(dir / "er.json.run.json"));

  const Outcome missing = Run(dir, base + Q(dir / "nope.jsonl"));
  CHECK(missing.code == 2);
  CHECK_FALSE(missing.err.empty());
  testing::WriteText(dir / "junk.jsonl", "{{{\n");
  CHECK(Run(dir, base + Q(dir / "junk.jsonl")).code == 2);
}

TEST_CASE("cli: simulate, train, quantize, reconstruct") {
  testing::ScratchDir dir;
  const std::filesystem::path data = UNITACCENT_DATA_DIR;
  const Outcome sim = Run(dir, "simulate --spec " + Q(data / "lang_b.json") +
                                   " --utts 6 --seed 3 --out-dir " + Q(dir / "sim"));
  REQUIRE(sim.code == 0);
  const Manifest m = LoadManifest(dir / "sim" / "manifest.json");
  CHECK(m.size() == 6);
  CHECK(ReadTokenFile(dir / "sim" / "tokens.jsonl").size() == 6);
  CHECK(std::filesystem::exists(dir / "sim" / "run.json"));

  const std::string train = "train-kmeans --manifest " + Q(dir / "sim" / "manifest.json") +
                            " --k 10 --seed 1 --language B --out ";
  REQUIRE(Run(dir, train + Q(dir / "cb1.fuc")).code == 0);
  REQUIRE(Run(dir, "--workers 3 " + train + Q(dir / "cb2.fuc")).code == 0);
  CHECK(testing::ReadText(dir / "cb1.fuc") == testing::ReadText(dir / "cb2.fuc"));
  REQUIRE(Run(dir, "train-kmeans --features " + Q(dir / "sim" / "manifest.json") +
                       " --k 10 --seed 1 --batch 32 --max-iters 5 --tol 0 --out " +
                       Q(dir / "mb.fuc"))
              .code == 0);
  CHECK(ReadCodebook(dir / "mb.fuc").meta().iterations_run == 5);
  const Codebook cb = ReadCodebook(dir / "cb1.fuc");
  CHECK(cb.k() == 10);
  CHECK(cb.meta().language == "B");

  // Run records are reproducible apart from the output name.
  json r1 = json::parse(testing::ReadText(dir / "cb1.fuc.run.json"));
  json r2 = json::parse(testing::ReadText(dir / "cb2.fuc.run.json"));
  CHECK(r1["subcommand"] == "train-kmeans");
  CHECK(r1["inputs"] == r2["inputs"]);
  CHECK(r1["seeds"] == r2["seeds"]);
  CHECK(r1["inputs"][0]["sha256"].get<std::string>().size() == 64);

  REQUIRE(Run(dir, "quantize --manifest " + Q(dir / "sim" / "manifest.json") + " --codebook " +
                       Q(dir / "cb1.fuc") + " --out " + Q(dir / "units.jsonl"))
              .code == 0);
  REQUIRE(Run(dir, "quantize --dedup --features " + Q(dir / "sim" / "manifest.json") +
                       " --codebook " + Q(dir / "cb1.fuc") + " --out " + Q(dir / "dd.jsonl"))
              .code == 0);
  const auto units = ReadUnitFile(dir / "units.jsonl");
  const auto dd = ReadUnitFile(dir / "dd.jsonl");
  REQUIRE(units.size() == 6);
  for (std::size_t i = 0; i < units.size(); ++i) {
    CHECK(std::holds_alternative<DedupUnitSequence>(dd[i]));
    CHECK(ToFrameWise(dd[i]) == ToFrameWise(units[i]));
  }

  REQUIRE(Run(dir, "reconstruct --units " + Q(dir / "units.jsonl") + " --codebook " +
                       Q(dir / "cb1.fuc") + " --out " + Q(dir / "rec") + " --manifest " +
                       Q(dir / "sim" / "manifest.json") + " --decoder-job " +
                       Q(dir / "jobs.jsonl"))
              .code == 0);
  const Manifest rec = LoadManifest(dir / "rec" / "manifest.json");
  REQUIRE(rec.size() == 6);
  CHECK(rec.entries()[0].group == m.entries()[0].group);
  const FeatureMatrix f = ReadFeatures(rec.entries()[0].path);
  CHECK(Quantize(f, cb).units == std::get<UnitSequence>(units[0]).units);
  CHECK(std::filesystem::exists(dir / "jobs.jsonl"));

  // A codebook for the wrong dimensionality is a data error.
  WriteCodebook(Codebook(2, 3, {0, 0, 0, 1, 1, 1}), dir / "bad.fuc");
  CHECK(Run(dir, "quantize --manifest " + Q(dir / "sim" / "manifest.json") + " --codebook " +
                     Q(dir / "bad.fuc") + " --out " + Q(dir / "x.jsonl"))
            .code == 2);
}

TEST_CASE("cli: eval-sr and phone-report") {
  testing::ScratchDir dir;
  WriteTokenFile(std::vector<TokenSequence>{{"m", TokenLevel::kPhone, {"th", "i"}, "", ""}},
                 dir / "model.jsonl");
  WriteTokenFile(std::vector<TokenSequence>{{"h1", TokenLevel::kPhone, {"s", "i"}, "s1", "m"},
                                            {"h2", TokenLevel::kPhone, {"th", "i"}, "s2", "m"}},
                 dir / "hyp.jsonl");
  REQUIRE(Run(dir, "eval-sr --model " + Q(dir / "model.jsonl") + " --hyp " + Q(dir / "hyp.jsonl") +
                       " --group sJE --out " + Q(dir / "sr.csv"))
              .code == 0);
  const std::string csv = testing::ReadText(dir / "sr.csv");
  CHECK(csv.find("sJE,th,s,0.5,1\n") != std::string::npos);
  CHECK(csv.find("sJE,i,,0,1\n") != std::string::npos);

  REQUIRE(Run(dir, "phone-report --sr " + Q(dir / "sr.csv") + " --target th --candidates s,t --out " +
                       Q(dir / "rep.csv"))
              .code == 0);
  CHECK(testing::ReadText(dir / "rep.csv").find("sJE,th,s,0.5,1\n") != std::string::npos);
}

TEST_CASE("cli: experiment report does not depend on --workers") {
  testing::ScratchDir dir;
  const std::string args =
      "experiment --k 4,8 --seeds 2 --train-utts 20 --eval-utts 5 --out ";
  REQUIRE(Run(dir, "--workers 1 " + args + Q(dir / "w1.json")).code == 0);
  REQUIRE(Run(dir, "--workers 4 " + args + Q(dir / "w4.json")).code == 0);
  CHECK(testing::ReadText(dir / "w1.json") == testing::ReadText(dir / "w4.json"));
  CHECK(Run(dir, args + Q(dir / "x.json") + " --k 8,4").code != 0);
}
