// unitaccent/embedding.h

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

#ifndef UNITACCENT_EMBEDDING_H_
#define UNITACCENT_EMBEDDING_H_

#include <array>
#include <span>
#include <string>
#include <vector>

#include "unitaccent/pronunciation.h"

namespace unitaccent {

struct Embedding2D {
  std::vector<std::array<double, 2>> coords;  // one per input vector
  std::vector<std::string> phonemes;          // columns used (defined for all)
  std::vector<double> mean;                   // per column
  std::array<std::vector<double>, 2> components;
  std::array<double, 2> eigenvalues{};        // descending
};

/// 2-D PCA of PD vectors, restricted to the phonemes defined in every
/// vector. Components are ordered by decreasing variance and signed so that
/// each one's largest-magnitude loading is positive. Throws DataError for
/// fewer than 3 vectors, fewer than 2 shared phonemes, or constant data.
Embedding2D PcaEmbed(std::span<const PdVector> vectors);

/// Same projection on a plain row-major matrix [n x cols].
Embedding2D PcaEmbed(std::span<const double> rows, std::size_t cols);

}  // namespace unitaccent

#endif  // UNITACCENT_EMBEDDING_H_
