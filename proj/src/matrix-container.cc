// src/matrix-container.cc

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

#include "matrix-container.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include "unitaccent/error.h"

namespace unitaccent {

const char *LoadErrorKindName(LoadErrorKind kind) {
  switch (kind) {
    case LoadErrorKind::kIo: return "io error";
    case LoadErrorKind::kBadMagic: return "bad magic";
    case LoadErrorKind::kTruncated: return "truncated payload";
    case LoadErrorKind::kTrailing: return "trailing bytes";
    case LoadErrorKind::kNonFinite: return "non-finite value";
    case LoadErrorKind::kMetadata: return "malformed metadata";
    case LoadErrorKind::kInvariant: return "invariant violation";
  }
  return "unknown";
}

namespace internal {

namespace {

void PutU32(std::string *out, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
  out->append(b, 4);
}

std::uint32_t GetU32(const char *p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i)
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(p[i])) << (8 * i);
  return v;
}

std::uint32_t CheckedU32(std::size_t n, const char *what) {
  if (n > std::numeric_limits<std::uint32_t>::max())
    throw ValidationError(std::string(what) + " does not fit in u32");
  return static_cast<std::uint32_t>(n);
}

}  // namespace

std::string ReadWholeFile(const std::filesystem::path &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw LoadError(LoadErrorKind::kIo, path.string(), "cannot open");
  std::string bytes((std::istreambuf_iterator<char>(is)),
                    std::istreambuf_iterator<char>());
  if (is.bad()) throw LoadError(LoadErrorKind::kIo, path.string(), "read failed");
  return bytes;
}

void WriteWholeFile(const std::filesystem::path &path, std::string_view bytes) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw LoadError(LoadErrorKind::kIo, path.string(), "cannot open for writing");
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!os) throw LoadError(LoadErrorKind::kIo, path.string(), "write failed");
}

void WriteMatrixContainer(const std::filesystem::path &path,
                          std::string_view magic, std::size_t rows,
                          std::size_t cols, std::span<const float> data,
                          const nlohmann::json &meta) {
  std::string out;
  out.reserve(16 + data.size() * 4);
  out.append(magic);
  PutU32(&out, CheckedU32(rows, "row count"));
  PutU32(&out, CheckedU32(cols, "column count"));
  for (float f : data) PutU32(&out, std::bit_cast<std::uint32_t>(f));
  const std::string blob = meta.dump();
  PutU32(&out, CheckedU32(blob.size(), "metadata length"));
  out.append(blob);
  WriteWholeFile(path, out);
}

MatrixContainer ReadMatrixContainer(const std::filesystem::path &path,
                                    std::string_view magic) {
  const std::string bytes = ReadWholeFile(path);
  const std::string where = path.string();
  if (bytes.size() < 4 || std::string_view(bytes).substr(0, 4) != magic)
    throw LoadError(LoadErrorKind::kBadMagic, where,
                    "expected \"" + std::string(magic) + "\"");
  if (bytes.size() < 12)
    throw LoadError(LoadErrorKind::kTruncated, where, "header incomplete");

  MatrixContainer c;
  c.rows = GetU32(bytes.data() + 4);
  c.cols = GetU32(bytes.data() + 8);
  const std::uint64_t n = static_cast<std::uint64_t>(c.rows) * c.cols;
  std::size_t pos = 12;
  if ((bytes.size() - pos) / 4 < n)
    throw LoadError(LoadErrorKind::kTruncated, where,
                    "payload shorter than " + std::to_string(c.rows) + "x" +
                        std::to_string(c.cols));
  c.data.resize(n);
  for (std::uint64_t i = 0; i < n; ++i, pos += 4) {
    const float f = std::bit_cast<float>(GetU32(bytes.data() + pos));
    if (!std::isfinite(f))
      throw LoadError(LoadErrorKind::kNonFinite, where,
                      "element " + std::to_string(i));
    c.data[i] = f;
  }
  if (bytes.size() - pos < 4)
    throw LoadError(LoadErrorKind::kTruncated, where, "missing metadata length");
  const std::uint32_t meta_len = GetU32(bytes.data() + pos);
  pos += 4;
  if (bytes.size() - pos < meta_len)
    throw LoadError(LoadErrorKind::kTruncated, where, "metadata blob cut short");
  if (bytes.size() - pos > meta_len)
    throw LoadError(LoadErrorKind::kTrailing, where,
                    std::to_string(bytes.size() - pos - meta_len) + " extra bytes");
  try {
    c.meta = nlohmann::json::parse(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                                   bytes.end());
  } catch (const nlohmann::json::exception &e) {
    throw LoadError(LoadErrorKind::kMetadata, where, e.what());
  }
  if (!c.meta.is_object())
    throw LoadError(LoadErrorKind::kMetadata, where, "metadata is not an object");
  return c;
}

}  // namespace internal
}  // namespace unitaccent
