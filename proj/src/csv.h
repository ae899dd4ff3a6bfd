// src/csv.h

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

// Minimal RFC 4180 style CSV: comma separated, fields quoted when they
// contain a comma, quote, CR or LF; "\n" line endings on output.

#ifndef UNITACCENT_SRC_CSV_H_
#define UNITACCENT_SRC_CSV_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace unitaccent::internal {

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void AddRow(std::vector<std::string> fields);
  std::string str() const { return out_; }
  void Save(const std::filesystem::path &path) const;

 private:
  void Append(const std::vector<std::string> &fields);
  std::size_t width_;
  std::string out_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name; throws LoadError(kMetadata) if absent.
  std::size_t Column(std::string_view name, const std::filesystem::path &path) const;
};

/// Parses a CSV file with a header row. Every row must have the header's
/// width. Throws LoadError.
CsvTable ReadCsv(const std::filesystem::path &path);

/// Shortest representation that round-trips ("%.17g" fallback), "nan" and
/// "inf"/"-inf" for non-finite values.
std::string FormatDouble(double x);
/// Accepts anything FormatDouble produces. Throws LoadError(kMetadata).
double ParseDouble(const std::string &s, const std::filesystem::path &path);
std::uint64_t ParseCount(const std::string &s, const std::filesystem::path &path);

}  // namespace unitaccent::internal

#endif  // UNITACCENT_SRC_CSV_H_
