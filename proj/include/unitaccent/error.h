// unitaccent/error.h

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

#ifndef UNITACCENT_ERROR_H_
#define UNITACCENT_ERROR_H_

#include <stdexcept>
#include <string>

namespace unitaccent {

/// Base of every error raised on bad input data. The CLI maps these to
/// exit status 2; anything else escaping is a bug.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string &what) : std::runtime_error(what) {}
};

enum class LoadErrorKind {
  kIo,          // cannot open / read / write
  kBadMagic,
  kTruncated,   // payload shorter than its header claims
  kTrailing,    // bytes left over after the metadata blob
  kNonFinite,
  kMetadata,    // JSON metadata or sidecar malformed
  kInvariant,   // parsed fine but violates a type invariant
};

const char *LoadErrorKindName(LoadErrorKind kind);

class LoadError : public DataError {
 public:
  LoadError(LoadErrorKind kind, const std::string &path,
            const std::string &detail)
      : DataError(path + ": " + LoadErrorKindName(kind) + ": " + detail),
        kind_(kind) {}
  LoadErrorKind kind() const { return kind_; }

 private:
  LoadErrorKind kind_;
};

/// Arguments inconsistent with each other (dims mismatch, K mismatch,
/// label-order mismatch, ...).
class ShapeError : public DataError {
 public:
  explicit ShapeError(const std::string &what) : DataError(what) {}
};

/// A value object was asked to hold something its invariants forbid.
class ValidationError : public DataError {
 public:
  explicit ValidationError(const std::string &what) : DataError(what) {}
};

}  // namespace unitaccent

#endif  // UNITACCENT_ERROR_H_
