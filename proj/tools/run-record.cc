// tools/run-record.cc

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

#include "run-record.h"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <iterator>

#include "json.hpp"
#include "unitaccent/error.h"
#include "unitaccent/version.h"

namespace unitaccent {

std::string Sha256File(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(LoadErrorKind::kIo, path.string(), "cannot open for digest");
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw DataError("sha256 failed for " + path.string());
  static const char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[md[i] >> 4];
    hex += kHex[md[i] & 15];
  }
  return hex;
}

RunRecord::RunRecord(std::string subcommand, std::vector<std::string> args)
    : subcommand_(std::move(subcommand)), args_(std::move(args)) {}

void RunRecord::AddInput(const std::filesystem::path &path) {
  const std::string p = path.generic_string();
  for (const auto &[q, digest] : inputs_)
    if (q == p) return;
  inputs_.emplace_back(p, Sha256File(path));
}

void RunRecord::AddOutput(const std::filesystem::path &path) {
  const std::string p = path.generic_string();
  if (std::find(outputs_.begin(), outputs_.end(), p) == outputs_.end()) outputs_.push_back(p);
}

std::string RunRecord::ToJson() const {
  nlohmann::ordered_json j;
  j["tool"] = "unitaccent";
  j["version"] = kVersion;
  j["subcommand"] = subcommand_;
  j["args"] = args_;
  j["seeds"] = nlohmann::ordered_json::object();
  for (const auto &[name, seed] : seeds_) j["seeds"][name] = seed;
  j["inputs"] = nlohmann::ordered_json::array();
  for (const auto &[p, digest] : inputs_) j["inputs"].push_back({{"path", p}, {"sha256", digest}});
  j["outputs"] = outputs_;
  return j.dump(2) + "\n";
}

void RunRecord::Save(const std::filesystem::path &path) const {
  std::ofstream out(path, std::ios::binary);
  out << ToJson();
  if (!out) throw LoadError(LoadErrorKind::kIo, path.string(), "cannot write run record");
}

}  // namespace unitaccent
