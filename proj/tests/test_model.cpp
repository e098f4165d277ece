// Copyright 2026 The wordevo Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <random>

#include "support.hpp"
#include "wordevo/model.hpp"

using namespace wordevo;
using wordevo::testing::OracleModel;

namespace {

FeatureVector labelled(const std::string& synset, const std::string& lemma, double extrapolation,
                       int cls, TrigramSet trigrams = {}) {
  FeatureVector v;
  v.synset_id = synset;
  v.sense = {lemma, 'a', 1};
  v.linear_extrapolation = extrapolation;
  v.unique_ngrams = std::move(trigrams);
  v.target_class = cls;
  return v;
}

}  // namespace

TEST_CASE("gaussian log density") {
  CHECK(gaussian_log_pdf(0.0, 1.0, 0.0) == doctest::Approx(-0.9189385332046727));
  CHECK(gaussian_log_pdf(2.0, 4.0, 4.0) == doctest::Approx(-0.5 * std::log(8 * M_PI) - 0.5));
  GaussianParams p{1.0, 0.25, 3};
  CHECK(gaussian_log_pdf(p, 1.5) == doctest::Approx(-0.5 * std::log(0.5 * M_PI) - 0.5));
}

TEST_CASE("compensated sum recovers small terms next to large ones") {
  CompensatedSum s;
  s.add(1e16);
  s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1.0);
}

TEST_CASE("fit matches the brute-force oracle") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    auto data = wordevo::testing::random_vectors(rng, 20);
    auto mask = wordevo::testing::random_mask(rng, 3);
    auto model = NaiveBayesModel::fit(data, mask);
    auto oracle = OracleModel::fit(data, mask);
    for (int c = 0; c < 2; ++c) {
      CHECK(model.prior(c) == doctest::Approx(static_cast<double>(oracle.prior[c])).epsilon(1e-12));
      for (std::size_t i = 0; i < oracle.scalars.size(); ++i) {
        auto p = model.scalar_params(i, c);
        CHECK(std::abs(p.mean - static_cast<double>(oracle.mean[c][i])) < 1e-9);
        CHECK(std::abs(p.variance - static_cast<double>(oracle.var[c][i])) < 1e-9);
      }
    }
    REQUIRE(model.trigram_index() == oracle.trigrams);
    for (const auto& v : data) {
      CHECK(std::abs(model.win_probability(v) - static_cast<double>(oracle.win_probability(v))) <
            1e-9);
    }
  }
}

TEST_CASE("fitting is invariant to input order") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    auto data = wordevo::testing::random_vectors(rng, 20);
    auto model = NaiveBayesModel::fit(data);
    std::shuffle(data.begin(), data.end(), rng);
    CHECK(NaiveBayesModel::fit(data) == model);
  }
}

TEST_CASE("skipping identical dimensions changes probabilities by at most 1e-9") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    auto data = wordevo::testing::random_vectors(rng, 20);
    // One dimension with the same values in both classes.
    for (auto& v : data) v.present_age = 120;
    auto model = NaiveBayesModel::fit(data);
    for (const auto& v : data) {
      CHECK(std::abs(model.win_probability(v, ScoreMode::full) -
                     model.win_probability(v, ScoreMode::skip_identical)) < 1e-9);
    }
  }
}

TEST_CASE("higher extrapolation means a higher win probability on a separable toy") {
  std::vector<FeatureVector> data;
  for (int i = 0; i < 10; ++i) {
    const std::string id = "s" + std::to_string(i);
    data.push_back(labelled(id, "win" + std::to_string(i), 0.7 + 0.01 * i, 1));
    data.push_back(labelled(id, "los" + std::to_string(i), 0.2 + 0.01 * i, 0));
  }
  auto model = NaiveBayesModel::fit(data, FeatureMask::only(Feature::linear_extrapolation));
  double previous = -1.0;
  for (double x = 0.3; x <= 0.7; x += 0.05) {
    const double p = model.win_probability(labelled("q", "probe", x, 0));
    CHECK(p >= previous);
    previous = p;
  }
  CHECK(model.win_probability(labelled("q", "probe", 0.75, 0)) > 0.99);
  CHECK(model.win_probability(labelled("q", "probe", 0.15, 0)) < 0.01);
}

TEST_CASE("unseen trigrams and single-sample classes") {
  std::vector<FeatureVector> data{labelled("a", "one", 0.9, 1, {"zzz"}),
                                  labelled("a", "two", 0.1, 0, {"abc"}),
                                  labelled("b", "three", 0.2, 0, {"abc"})};
  auto model = NaiveBayesModel::fit(data);
  CHECK(model.scalar_params(6, 1).variance == kVarianceFloor);
  CHECK(model.trigram_index() == std::vector<std::string>{"abc", "zzz"});
  auto probe = labelled("c", "four", 0.9, 0, {"qqq"});
  const double p = model.win_probability(probe);
  CHECK(p >= 0.0);
  CHECK(p <= 1.0);
}

TEST_CASE("a missing class cannot be fitted") {
  std::vector<FeatureVector> data{labelled("a", "one", 0.9, 1), labelled("b", "two", 0.8, 1)};
  CHECK_THROWS_AS(NaiveBayesModel::fit(data), UnfittableError);
  data[0].target_class.reset();
  CHECK_THROWS_AS(NaiveBayesModel::fit(data), UnfittableError);
}

TEST_CASE("models survive a JSON round trip") {
  std::mt19937_64 rng(3);
  auto data = wordevo::testing::random_vectors(rng, 20);
  auto model = NaiveBayesModel::fit(data, FeatureMask::all().without(Feature::present_age));
  auto back = NaiveBayesModel::from_json(nlohmann::json::parse(model.to_json().dump()));
  CHECK(back == model);
  for (const auto& v : data) CHECK(back.win_probability(v) == model.win_probability(v));
  CHECK_THROWS(NaiveBayesModel::from_json(nlohmann::json{{"format", "other"}}));
}
