// tools/run-record.h

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

// JSON record of one CLI invocation, written next to its outputs:
//
//   {"tool": "unitaccent", "version": ..., "subcommand": ..., "args": [...],
//    "seeds": {...}, "inputs": [{"path": ..., "sha256": ...}], "outputs": [...]}
//
// Contains no timestamps or host details, so re-running the recorded
// arguments on the same inputs reproduces the record byte for byte.

#ifndef UNITACCENT_TOOLS_RUN_RECORD_H_
#define UNITACCENT_TOOLS_RUN_RECORD_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace unitaccent {

/// Lower-case hex SHA-256 of a file's bytes.
std::string Sha256File(const std::filesystem::path &path);

class RunRecord {
 public:
  RunRecord(std::string subcommand, std::vector<std::string> args);

  void AddSeed(const std::string &name, std::uint64_t seed) { seeds_[name] = seed; }
  /// Digests the file now; repeated paths are recorded once.
  void AddInput(const std::filesystem::path &path);
  void AddOutput(const std::filesystem::path &path);

  std::string ToJson() const;
  void Save(const std::filesystem::path &path) const;

 private:
  std::string subcommand_;
  std::vector<std::string> args_;
  std::map<std::string, std::uint64_t> seeds_;
  std::vector<std::pair<std::string, std::string>> inputs_;
  std::vector<std::string> outputs_;
};

}  // namespace unitaccent

#endif  // UNITACCENT_TOOLS_RUN_RECORD_H_
