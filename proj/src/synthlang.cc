// src/synthlang.cc

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

#include "unitaccent/synthlang.h"

#include <cmath>
#include <set>

#include "json.hpp"
#include "matrix-container.h"
#include "random.h"
#include "unitaccent/error.h"

namespace unitaccent {

namespace {

using nlohmann::json;

[[noreturn]] void Invalid(const std::string &field, const std::string &what) {
  throw ValidationError("language spec: " + field + ": " + what);
}

template <typename T>
T Field(const json &j, const char *key, const std::string &where) {
  if (!j.contains(key)) Invalid(where + key, "missing");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception &) {
    Invalid(where + key, "has the wrong type");
  }
}

void CheckStochastic(std::span<const double> row, const std::string &field) {
  double sum = 0.0;
  for (double x : row) {
    if (!(x >= 0.0) || !std::isfinite(x)) Invalid(field, "entries must be finite and >= 0");
    sum += x;
  }
  if (std::abs(sum - 1.0) > kStochasticTolerance)
    Invalid(field, "sums to " + std::to_string(sum) + ", expected 1");
}

std::size_t SampleCategorical(internal::Rng &rng, std::span<const double> probs) {
  const double u = internal::Uniform01(rng);
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    acc += probs[i];
    last = i;
    if (u < acc) return i;
  }
  return last;
}

// Tags for the independent random streams of one utterance.
constexpr std::uint64_t kPhoneStream = 1;
constexpr std::uint64_t kDurationStream = 2;
constexpr std::uint64_t kEmissionStream = 3;

}  // namespace

std::size_t SyntheticLanguage::PhoneIndex(const std::string &label) const {
  for (std::size_t i = 0; i < phones.size(); ++i)
    if (phones[i].label == label) return i;
  return phones.size();
}

void SyntheticLanguage::Validate() const {
  if (dims == 0) Invalid("dims", "must be >= 1");
  const std::size_t p = phones.size();
  if (p < 2) Invalid("phones", "at least 2 phones required, got " + std::to_string(p));
  std::set<std::string> seen;
  for (std::size_t i = 0; i < p; ++i) {
    const auto &ph = phones[i];
    const std::string where = "phones[" + std::to_string(i) + "].";
    if (ph.label.empty()) Invalid(where + "label", "must be non-empty");
    if (ph.label == kSilenceLabel) Invalid(where + "label", "\"SIL\" is reserved");
    if (!seen.insert(ph.label).second) Invalid(where + "label", "duplicate \"" + ph.label + "\"");
    if (ph.mean.size() != dims)
      Invalid(where + "mean", "length " + std::to_string(ph.mean.size()) + " != dims");
    if (ph.stdev.size() != dims)
      Invalid(where + "stdev", "length " + std::to_string(ph.stdev.size()) + " != dims");
    for (double m : ph.mean)
      if (!std::isfinite(m)) Invalid(where + "mean", "non-finite entry");
    for (double s : ph.stdev)
      if (!(s > 0.0) || !std::isfinite(s)) Invalid(where + "stdev", "entries must be > 0");
  }
  if (transition.size() != p * p) Invalid("transition", "must be a " + std::to_string(p) +
                                                            " x " + std::to_string(p) + " matrix");
  for (std::size_t i = 0; i < p; ++i)
    CheckStochastic(std::span<const double>(transition).subspan(i * p, p),
                    "transition[" + std::to_string(i) + "]");
  if (start.size() != p) Invalid("start", "length must equal the number of phones");
  CheckStochastic(start, "start");
  if (min_duration < 1) Invalid("duration_range", "min must be >= 1");
  if (max_duration < min_duration) Invalid("duration_range", "max must be >= min");
}

SyntheticLanguage MakeLanguage(const std::string &spec_json) {
  json j;
  try {
    j = json::parse(spec_json);
  } catch (const json::parse_error &e) {
    throw ValidationError(std::string("language spec: not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("language spec: top level must be an object");
  SyntheticLanguage lang;
  lang.name = Field<std::string>(j, "name", "");
  const auto dims = Field<std::int64_t>(j, "dims", "");
  if (dims < 1) Invalid("dims", "must be >= 1");
  lang.dims = static_cast<std::size_t>(dims);
  const auto phones = Field<json>(j, "phones", "");
  if (!phones.is_array()) Invalid("phones", "must be an array");
  for (std::size_t i = 0; i < phones.size(); ++i) {
    const std::string where = "phones[" + std::to_string(i) + "].";
    lang.phones.push_back({Field<std::string>(phones[i], "label", where),
                           Field<std::vector<double>>(phones[i], "mean", where),
                           Field<std::vector<double>>(phones[i], "stdev", where)});
  }
  const std::size_t p = lang.phones.size();
  const auto rows = Field<std::vector<std::vector<double>>>(j, "transition", "");
  if (rows.size() != p) Invalid("transition", "must have one row per phone");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != p)
      Invalid("transition[" + std::to_string(i) + "]", "must have one entry per phone");
    lang.transition.insert(lang.transition.end(), rows[i].begin(), rows[i].end());
  }
  if (j.contains("start"))
    lang.start = Field<std::vector<double>>(j, "start", "");
  else
    lang.start.assign(p, p ? 1.0 / static_cast<double>(p) : 0.0);
  const auto range = Field<std::vector<std::int64_t>>(j, "duration_range", "");
  if (range.size() != 2) Invalid("duration_range", "must be [min, max]");
  if (range[0] < 1) Invalid("duration_range", "min must be >= 1");
  if (range[1] < range[0]) Invalid("duration_range", "max must be >= min");
  lang.min_duration = static_cast<std::uint32_t>(range[0]);
  lang.max_duration = static_cast<std::uint32_t>(range[1]);
  lang.Validate();
  return lang;
}

SyntheticLanguage LoadLanguage(const std::filesystem::path &path) {
  return MakeLanguage(internal::ReadWholeFile(path));
}

std::string LanguageToJson(const SyntheticLanguage &lang) {
  json j;
  j["name"] = lang.name;
  j["dims"] = lang.dims;
  j["phones"] = json::array();
  for (const auto &ph : lang.phones)
    j["phones"].push_back({{"label", ph.label}, {"mean", ph.mean}, {"stdev", ph.stdev}});
  const std::size_t p = lang.num_phones();
  j["transition"] = json::array();
  for (std::size_t i = 0; i < p; ++i)
    j["transition"].push_back(std::vector<double>(lang.transition.begin() + i * p,
                                                  lang.transition.begin() + (i + 1) * p));
  j["start"] = lang.start;
  j["duration_range"] = {lang.min_duration, lang.max_duration};
  return j.dump(2) + "\n";
}

SampledUtterance SampleUtterance(const SyntheticLanguage &lang, std::size_t n_phones,
                                 std::uint64_t seed, const std::string &utt_id) {
  if (n_phones == 0) throw DataError("sample_utterance: n_phones must be >= 1");
  const std::size_t p = lang.num_phones(), d = lang.dims;
  internal::Rng phone_rng(internal::MixSeed(seed, kPhoneStream));
  internal::Rng dur_rng(internal::MixSeed(seed, kDurationStream));
  internal::Rng emit_rng(internal::MixSeed(seed, kEmissionStream));

  SampledUtterance out;
  out.phones.utt_id = utt_id;
  out.phones.level = TokenLevel::kPhone;
  std::vector<float> data;
  std::size_t cur = SampleCategorical(phone_rng, lang.start);
  const std::size_t span = lang.max_duration - lang.min_duration + 1;
  for (std::size_t n = 0; n < n_phones; ++n) {
    if (n > 0)
      cur = SampleCategorical(phone_rng,
                              std::span<const double>(lang.transition).subspan(cur * p, p));
    const SyntheticPhone &ph = lang.phones[cur];
    out.phones.tokens.push_back(ph.label);
    const std::size_t dur = lang.min_duration + internal::UniformIndex(dur_rng, span);
    for (std::size_t f = 0; f < dur; ++f) {
      for (std::size_t k = 0; k < d; ++k)
        data.push_back(static_cast<float>(ph.mean[k] +
                                          ph.stdev[k] * internal::StandardNormal(emit_rng)));
      out.frame_phone.push_back(static_cast<std::uint32_t>(cur));
    }
  }
  const std::size_t rows = out.frame_phone.size();
  out.features = FeatureMatrix(utt_id, rows, d, std::move(data));
  return out;
}

std::vector<std::uint32_t> NearestPhones(const FeatureMatrix &m, const SyntheticLanguage &lang) {
  if (m.rows() > 0 && m.dims() != lang.dims)
    throw ShapeError("oracle decode: features have " + std::to_string(m.dims()) +
                     " dims, language " + lang.name + " has " + std::to_string(lang.dims));
  std::vector<std::uint32_t> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto x = m.Row(r);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < lang.num_phones(); ++i) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < lang.dims; ++k) {
        const double diff = static_cast<double>(x[k]) - lang.phones[i].mean[k];
        d2 += diff * diff;
      }
      if (d2 < best) {
        best = d2;
        out[r] = static_cast<std::uint32_t>(i);
      }
    }
  }
  return out;
}

TokenSequence OraclePhoneDecode(const FeatureMatrix &m, const SyntheticLanguage &lang,
                                std::size_t min_run) {
  TokenSequence out;
  out.utt_id = m.utt_id();
  out.level = TokenLevel::kPhone;
  const std::vector<std::uint32_t> frames = NearestPhones(m, lang);
  std::size_t last = lang.num_phones();
  for (std::size_t i = 0; i < frames.size();) {
    std::size_t j = i;
    while (j < frames.size() && frames[j] == frames[i]) ++j;
    if (j - i >= min_run && frames[i] != last) {
      out.tokens.push_back(lang.phones[frames[i]].label);
      last = frames[i];
    }
    i = j;
  }
  return out;
}

namespace {

// Default experiment geometry, 8 dimensions. The eight shared phones sit on
// well separated axis points. B's "w" and "z" hang off "u" and "o"; A's "th"
// lies beyond "s" on the same axis and A's "v" far out along the long axis of
// B's "w", so only a fine codebook has centroids on its side of the u/v
// midpoint.
constexpr std::size_t kDefaultDims = 8;
constexpr double kBaseStdev = 0.3;

std::vector<double> Axis(std::size_t k, double scale) {
  std::vector<double> v(kDefaultDims, 0.0);
  v[k] = scale;
  return v;
}

std::vector<double> Add(std::vector<double> a, const std::vector<double> &b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

SyntheticPhone Phone(std::string label, std::vector<double> mean) {
  return {std::move(label), std::move(mean), std::vector<double>(kDefaultDims, kBaseStdev)};
}

std::vector<SyntheticPhone> SharedPhones() {
  return {Phone("a", Axis(0, 2.0)),  Phone("i", Axis(1, 2.0)),  Phone("u", Axis(2, 2.0)),
          Phone("e", Axis(3, 2.0)),  Phone("o", Axis(4, 2.0)),  Phone("s", Axis(5, 3.0)),
          Phone("t", Axis(6, 2.0)),  Phone("k", Axis(7, 2.0))};
}

SyntheticLanguage Finish(std::string name, std::vector<SyntheticPhone> phones) {
  SyntheticLanguage lang;
  lang.name = std::move(name);
  lang.dims = kDefaultDims;
  lang.phones = std::move(phones);
  const std::size_t p = lang.phones.size();
  lang.transition.assign(p * p, 1.0 / static_cast<double>(p - 1));
  for (std::size_t i = 0; i < p; ++i) lang.transition[i * p + i] = 0.0;
  lang.start.assign(p, 1.0 / static_cast<double>(p));
  lang.min_duration = 4;
  lang.max_duration = 10;
  lang.Validate();
  return lang;
}

}  // namespace

SyntheticLanguage DefaultLanguageA() {
  auto phones = SharedPhones();
  phones.push_back(Phone("th", Axis(5, 5.2)));
  phones.push_back(Phone("v", Add(Axis(2, 2.0), Axis(0, -3.2))));
  return Finish("A", std::move(phones));
}

SyntheticLanguage DefaultLanguageB() {
  auto phones = SharedPhones();
  SyntheticPhone w = Phone("w", Add(Axis(2, 2.0), Axis(0, -0.8)));
  w.stdev[0] = 0.55;
  phones.push_back(w);
  phones.push_back(Phone("z", Add(Axis(4, 2.0), Axis(7, -0.9))));
  return Finish("B", std::move(phones));
}

}  // namespace unitaccent
