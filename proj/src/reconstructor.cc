// src/reconstructor.cc

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

#include "unitaccent/reconstructor.h"

#include <sstream>

#include "json.hpp"
#include "matrix-container.h"

namespace unitaccent {

using nlohmann::json;

FeatureMatrix DecodeCentroid(const UnitSequence &s, const Codebook &cb) {
  s.Validate();
  if (s.k != cb.k())
    throw ShapeError("unit sequence " + s.utt_id + " has K = " + std::to_string(s.k) +
                     ", codebook has K = " + std::to_string(cb.k()));
  const std::size_t dims = cb.dims();
  std::vector<float> data;
  data.reserve(s.size() * dims);
  for (std::uint32_t u : s.units) {
    auto c = cb.Centroid(u);
    data.insert(data.end(), c.begin(), c.end());
  }
  return FeatureMatrix(s.utt_id, s.size(), dims, std::move(data));
}

double MeanSquaredError(const FeatureMatrix &a, const FeatureMatrix &b) {
  if (a.rows() != b.rows() || a.dims() != b.dims())
    throw ShapeError("MSE of " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.dims()) + " vs " + std::to_string(b.rows()) +
                     "x" + std::to_string(b.dims()));
  if (a.rows() == 0) return 0.0;
  double total = 0.0;
  auto x = a.data(), y = b.data();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    double acc = 0.0;
    for (std::size_t d = 0; d < a.dims(); ++d) {
      const double diff = static_cast<double>(x[r * a.dims() + d]) - y[r * a.dims() + d];
      acc += diff * diff;
    }
    total += acc;
  }
  return total / static_cast<double>(a.rows());
}

std::string ExportDecoderJob(const UnitSequence &s) {
  return json{{"utt_id", s.utt_id}, {"K", s.k}, {"text", ToChars(s)}}.dump();
}

void WriteDecoderJobs(std::span<const UnitSequence> seqs,
                      const std::filesystem::path &path) {
  std::string out;
  for (const auto &s : seqs) {
    out += ExportDecoderJob(s);
    out += '\n';
  }
  internal::WriteWholeFile(path, out);
}

std::vector<DecoderJob> ReadDecoderJobs(const std::filesystem::path &path) {
  std::istringstream is(internal::ReadWholeFile(path));
  std::vector<DecoderJob> jobs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json obj = json::parse(line);
      DecoderJob job{obj.at("utt_id").get<std::string>(),
                     obj.at("K").get<std::uint32_t>(),
                     obj.at("text").get<std::string>()};
      FromChars(job.text, job.k);  // validates the text
      jobs.push_back(std::move(job));
    } catch (const json::exception &e) {
      throw LoadError(LoadErrorKind::kMetadata,
                      path.string() + ":" + std::to_string(lineno), e.what());
    } catch (const ValidationError &e) {
      throw LoadError(LoadErrorKind::kInvariant,
                      path.string() + ":" + std::to_string(lineno), e.what());
    }
  }
  return jobs;
}

FeatureMatrix ImportDecoderOutput(const std::filesystem::path &path,
                                  const std::string &expected_utt_id) {
  FeatureMatrix m = ReadFeatures(path);
  if (m.utt_id() != expected_utt_id)
    throw LoadError(LoadErrorKind::kInvariant, path.string(),
                    "decoder output is for \"" + m.utt_id() + "\", expected \"" +
                        expected_utt_id + "\"");
  return m;
}

}  // namespace unitaccent
