// tests/test-embedding.cc

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

#include <Eigen/SVD>
#include <cmath>

#include "doctest.h"
#include "test-util.h"
#include "unitaccent/embedding.h"

using namespace unitaccent;

namespace {

PdVector Pd(const std::string &id, std::vector<double> v) {
  PdVector pd;
  pd.speaker_id = id;
  for (std::size_t i = 0; i < v.size(); ++i) pd.phoneme_labels.push_back("p" + std::to_string(i));
  pd.defined.assign(v.size(), 1);
  pd.support.assign(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (std::isnan(v[i])) pd.defined[i] = pd.support[i] = 0;
  pd.values = std::move(v);
  return pd;
}

double Dist(const std::array<double, 2> &a, const std::array<double, 2> &b) {
  return std::hypot(a[0] - b[0], a[1] - b[1]);
}

}  // namespace

TEST_CASE("PCA: collinear points land on the first axis") {
  const std::vector<double> rows = {0, 0, 1, 2, 2, 4, 3, 6};
  const Embedding2D e = PcaEmbed(rows, 2);
  REQUIRE(e.coords.size() == 4);
  CHECK(e.eigenvalues[1] == doctest::Approx(0.0));
  CHECK(e.components[0][0] == doctest::Approx(1 / std::sqrt(5.0)));
  CHECK(e.components[0][1] == doctest::Approx(2 / std::sqrt(5.0)));
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(e.coords[i][0] == doctest::Approx((i - 1.5) * std::sqrt(5.0)));
    CHECK(e.coords[i][1] == doctest::Approx(0.0).epsilon(1e-9));
  }
  CHECK(e.mean == std::vector<double>{1.5, 3.0});
}

TEST_CASE("PCA: two-column input is a rigid motion, distances kept") {
  testing::TestRng rng(61);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = testing::RandInt(rng, 3, 30);
    std::vector<double> rows(n * 2);
    for (auto &x : rows) x = testing::RandReal(rng, -4, 4);
    const Embedding2D e = PcaEmbed(rows, 2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d0 = std::hypot(rows[2 * i] - rows[2 * j], rows[2 * i + 1] - rows[2 * j + 1]);
        REQUIRE(Dist(e.coords[i], e.coords[j]) == doctest::Approx(d0).epsilon(1e-9));
      }
    REQUIRE(e.eigenvalues[0] >= e.eigenvalues[1]);
  }
}

TEST_CASE("PCA: projections agree with an SVD of the centred data") {
  testing::TestRng rng(62);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = testing::RandInt(rng, 4, 40), d = testing::RandInt(rng, 3, 12);
    std::vector<double> rows(n * d);
    for (auto &x : rows) x = testing::RandReal(rng, 0, 3);
    const Embedding2D e = PcaEmbed(rows, d);

    Eigen::MatrixXd x(n, d);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < d; ++j) x(i, j) = rows[i * d + j];
    x = x.rowwise() - x.colwise().mean();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
    for (int c = 0; c < 2; ++c) {
      const double var = svd.singularValues()(c) * svd.singularValues()(c) / (n - 1);
      REQUIRE(e.eigenvalues[c] == doctest::Approx(var).epsilon(1e-9));
      const Eigen::VectorXd proj = x * svd.matrixV().col(c);
      // Components are unique up to sign; match the sign through a dot product.
      double dot = 0;
      for (std::size_t i = 0; i < n; ++i) dot += proj(i) * e.coords[i][c];
      const double s = dot < 0 ? -1.0 : 1.0;
      for (std::size_t i = 0; i < n; ++i)
        REQUIRE(e.coords[i][c] == doctest::Approx(s * proj(i)).epsilon(1e-7).scale(1.0));
    }
    // Sign convention: largest loading is positive.
    for (int c = 0; c < 2; ++c) {
      std::size_t arg = 0;
      for (std::size_t j = 1; j < d; ++j)
        if (std::abs(e.components[c][j]) > std::abs(e.components[c][arg])) arg = j;
      REQUIRE(e.components[c][arg] > 0);
    }
    // Same input, same output.
    const Embedding2D again = PcaEmbed(rows, d);
    REQUIRE(again.coords == e.coords);
  }
}

TEST_CASE("PCA of PD vectors uses the phonemes every speaker defines") {
  const std::vector<PdVector> pds = {Pd("a", {1, 0, NAN, 5}), Pd("b", {2, 1, 3, 5}),
                                     Pd("c", {3, 0, 1, 6}), Pd("d", {0, 2, 2, 4})};
  const Embedding2D e = PcaEmbed(pds);
  CHECK(e.phonemes == std::vector<std::string>{"p0", "p1", "p3"});
  CHECK(e.coords.size() == 4);
  const std::vector<double> rows = {1, 0, 5, 2, 1, 5, 3, 0, 6, 0, 2, 4};
  CHECK(PcaEmbed(rows, 3).coords == e.coords);
}

TEST_CASE("PCA: errors") {
  CHECK_THROWS_AS(PcaEmbed(std::vector<double>{1, 2, 3, 4}, 2), DataError);
  CHECK_THROWS_AS(PcaEmbed(std::vector<double>{1, 2, 3}, 1), DataError);
  CHECK_THROWS_AS(PcaEmbed(std::vector<double>{1, 1, 1, 1, 1, 1}, 2), DataError);
  const std::vector<PdVector> thin = {Pd("a", {1, NAN}), Pd("b", {1, 2}), Pd("c", {3, 2})};
  CHECK_THROWS_AS(PcaEmbed(thin), DataError);
  std::vector<PdVector> mixed = {Pd("a", {1, 2}), Pd("b", {1, 2}), Pd("c", {3, 2})};
  mixed[2].phoneme_labels = {"p1", "p0"};
  CHECK_THROWS_AS(PcaEmbed(mixed), ShapeError);
}
