// src/embedding.cc

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

#include "unitaccent/embedding.h"

#include <Eigen/Dense>
#include <cmath>

namespace unitaccent {

Embedding2D PcaEmbed(std::span<const double> rows, std::size_t cols) {
  if (cols < 2) throw DataError("PCA needs at least 2 shared columns");
  const std::size_t n = rows.size() / cols;
  if (n < 3) throw DataError("PCA needs at least 3 vectors, got " + std::to_string(n));

  using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMatrix> x(rows.data(), static_cast<Eigen::Index>(n),
                                static_cast<Eigen::Index>(cols));
  const Eigen::RowVectorXd mean = x.colwise().mean();
  const Eigen::MatrixXd centered = x.rowwise() - mean;
  const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  if (eig.info() != Eigen::Success) throw DataError("PCA eigendecomposition failed");

  const Eigen::Index d = static_cast<Eigen::Index>(cols);
  const double top = eig.eigenvalues()(d - 1);
  if (!(top > 1e-12 * std::max(1.0, cov.trace())))
    throw DataError("PCA input has rank < 1 (all vectors identical)");

  Embedding2D out;
  out.mean.assign(mean.data(), mean.data() + cols);
  for (int c = 0; c < 2; ++c) {
    Eigen::VectorXd v = eig.eigenvectors().col(d - 1 - c);
    Eigen::Index arg = 0;
    for (Eigen::Index i = 1; i < d; ++i)
      if (std::abs(v(i)) > std::abs(v(arg))) arg = i;
    if (v(arg) < 0) v = -v;
    out.components[c].assign(v.data(), v.data() + cols);
    out.eigenvalues[c] = std::max(0.0, eig.eigenvalues()(d - 1 - c));
  }
  Eigen::Map<const Eigen::VectorXd> c0(out.components[0].data(), d);
  Eigen::Map<const Eigen::VectorXd> c1(out.components[1].data(), d);
  out.coords.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = centered.row(static_cast<Eigen::Index>(i));
    out.coords[i] = {row.dot(c0), row.dot(c1)};
  }
  return out;
}

Embedding2D PcaEmbed(std::span<const PdVector> vectors) {
  if (vectors.size() < 3)
    throw DataError("PCA needs at least 3 vectors, got " + std::to_string(vectors.size()));
  const auto &labels = vectors.front().phoneme_labels;
  for (const auto &v : vectors)
    if (v.phoneme_labels != labels)
      throw ShapeError("phoneme label order of " + v.speaker_id + " differs");
  std::vector<std::size_t> shared;
  for (std::size_t p = 0; p < labels.size(); ++p) {
    bool all = true;
    for (const auto &v : vectors) all = all && v.defined[p];
    if (all) shared.push_back(p);
  }
  if (shared.size() < 2)
    throw DataError("PCA needs at least 2 phonemes defined for every speaker, got " +
                    std::to_string(shared.size()));
  std::vector<double> rows;
  rows.reserve(vectors.size() * shared.size());
  for (const auto &v : vectors)
    for (std::size_t p : shared) rows.push_back(v.values[p]);
  Embedding2D out = PcaEmbed(rows, shared.size());
  for (std::size_t p : shared) out.phonemes.push_back(labels[p]);
  return out;
}

}  // namespace unitaccent
