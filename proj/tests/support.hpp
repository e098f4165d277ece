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

#ifndef WORDEVO_TESTS_SUPPORT_HPP_
#define WORDEVO_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "wordevo/experiments.hpp"
#include "wordevo/io.hpp"

namespace wordevo::testing {

inline std::filesystem::path fixture(const std::string& relative) {
  return std::filesystem::path(WORDEVO_FIXTURE_DIR) / relative;
}

inline InputPaths rapture_paths() {
  InputPaths p;
  p.corpus = {fixture("rapture/corpus.tsv")};
  p.lexicon = fixture("rapture/lexicon.tsv");
  p.catvar = fixture("rapture/catvar.tsv");
  p.syllables = fixture("rapture/syllables.tsv");
  return p;
}

inline InputPaths synthetic_paths() {
  InputPaths p;
  p.corpus = {fixture("synthetic/corpus_a.tsv"), fixture("synthetic/corpus_b.tsv.gz")};
  p.lexicon = fixture("synthetic/lexicon.tsv");
  p.catvar = fixture("synthetic/catvar.tsv");
  return p;
}

// Straightforward Gaussian naive Bayes over an explicit dense design
// matrix, in long double. Shares no code with the library model.
struct OracleModel {
  std::vector<Feature> scalars;
  std::vector<std::string> trigrams;
  long double prior[2] = {0, 0};
  std::vector<long double> mean[2];
  std::vector<long double> var[2];

  std::vector<long double> row(const FeatureVector& v) const {
    std::vector<long double> x;
    for (auto f : scalars) x.push_back(static_cast<long double>(v.scalar(f)));
    for (const auto& t : trigrams) {
      x.push_back(std::count(v.unique_ngrams.begin(), v.unique_ngrams.end(), t) > 0 ? 1.0L : 0.0L);
    }
    return x;
  }

  static OracleModel fit(const std::vector<FeatureVector>& data, FeatureMask mask,
                         long double floor = 1e-9L) {
    OracleModel m;
    m.scalars = mask.scalar_features();
    if (mask.has(Feature::unique_ngrams)) {
      std::set<std::string> all;
      for (const auto& v : data) all.insert(v.unique_ngrams.begin(), v.unique_ngrams.end());
      m.trigrams.assign(all.begin(), all.end());
    }
    std::vector<std::vector<long double>> rows[2];
    for (const auto& v : data) rows[*v.target_class].push_back(m.row(v));
    const long double n_total = static_cast<long double>(data.size());
    for (int c = 0; c < 2; ++c) {
      const long double n = static_cast<long double>(rows[c].size());
      m.prior[c] = (n + 1) / (n_total + 2);
      const std::size_t dims = m.scalars.size() + m.trigrams.size();
      for (std::size_t d = 0; d < dims; ++d) {
        long double s = 0;
        for (const auto& r : rows[c]) s += r[d];
        const long double mu = s / n;
        long double ss = 0;
        for (const auto& r : rows[c]) ss += (r[d] - mu) * (r[d] - mu);
        long double v = rows[c].size() > 1 ? ss / (n - 1) : floor;
        m.mean[c].push_back(mu);
        m.var[c].push_back(std::max(v, floor));
      }
    }
    return m;
  }

  long double log_odds(const FeatureVector& v) const {
    const auto x = row(v);
    long double z = std::log(prior[1]) - std::log(prior[0]);
    for (std::size_t d = 0; d < x.size(); ++d) {
      z += gaussian_log_pdf<long double>(mean[1][d], var[1][d], x[d]) -
           gaussian_log_pdf<long double>(mean[0][d], var[0][d], x[d]);
    }
    return z;
  }

  long double win_probability(const FeatureVector& v) const {
    return 1.0L / (1.0L + std::exp(-log_odds(v)));
  }
};

// Random labelled vectors with up to `max_vectors` rows; both classes are
// present. Trigrams come from a tiny alphabet so that dimensions repeat.
inline std::vector<FeatureVector> random_vectors(std::mt19937_64& rng, std::size_t max_vectors) {
  std::uniform_int_distribution<std::size_t> count(2, max_vectors);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> small(0, 4);
  const std::vector<std::string> pool = {"|ab", "abc", "bc|"};
  std::bernoulli_distribution coin(0.4);
  const std::size_t n = count(rng);
  std::vector<FeatureVector> out;
  for (std::size_t i = 0; i < n; ++i) {
    FeatureVector v;
    v.synset_id = "s" + std::to_string(i / 2);
    v.sense = {"w" + std::to_string(i), 'a', 1};
    v.normalized_length = normal(rng);
    v.syllable_count = small(rng);
    v.shared_ngrams = normal(rng);
    v.categorial_variations = small(rng);
    v.relative_growth = normal(rng) * 0.1;
    v.linear_extrapolation = normal(rng) + 0.5;
    v.present_age = 100 + small(rng) * 37;
    for (const auto& t : pool) {
      if (coin(rng)) v.unique_ngrams.push_back(t);
    }
    v.target_class = i == 0 ? 0 : (i == 1 ? 1 : static_cast<int>(coin(rng)));
    out.push_back(std::move(v));
  }
  return out;
}

// A mask with at most `max_scalars` scalar features, sometimes with the
// trigram block.
inline FeatureMask random_mask(std::mt19937_64& rng, std::size_t max_scalars) {
  std::vector<Feature> scalars;
  for (auto f : kAllFeatures) {
    if (is_scalar(f)) scalars.push_back(f);
  }
  std::shuffle(scalars.begin(), scalars.end(), rng);
  std::uniform_int_distribution<std::size_t> k(1, max_scalars);
  auto mask = FeatureMask::none();
  const auto take = k(rng);
  for (std::size_t i = 0; i < take; ++i) mask = mask.with(scalars[i]);
  if (std::bernoulli_distribution(0.5)(rng)) mask = mask.with(Feature::unique_ngrams);
  return mask;
}

}  // namespace wordevo::testing

#endif  // WORDEVO_TESTS_SUPPORT_HPP_
