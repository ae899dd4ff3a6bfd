// src/matrix-container.h

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

// Shared layout of FUF1 and FUC1:
//   magic[4] | rows u32 | cols u32 | rows*cols f32 | meta_len u32 | meta JSON

#ifndef UNITACCENT_SRC_MATRIX_CONTAINER_H_
#define UNITACCENT_SRC_MATRIX_CONTAINER_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace unitaccent::internal {

struct MatrixContainer {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<float> data;
  nlohmann::json meta;
};

void WriteMatrixContainer(const std::filesystem::path &path,
                          std::string_view magic, std::size_t rows,
                          std::size_t cols, std::span<const float> data,
                          const nlohmann::json &meta);

/// Throws LoadError with kind kIo, kBadMagic, kTruncated, kTrailing,
/// kNonFinite or kMetadata.
MatrixContainer ReadMatrixContainer(const std::filesystem::path &path,
                                    std::string_view magic);

std::string ReadWholeFile(const std::filesystem::path &path);
void WriteWholeFile(const std::filesystem::path &path, std::string_view bytes);

}  // namespace unitaccent::internal

#endif  // UNITACCENT_SRC_MATRIX_CONTAINER_H_
